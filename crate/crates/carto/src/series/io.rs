//! JSON and CSV serialization of series with exact integer strings.

use super::{Grid, Series, Series2};
use crate::rat::Rat;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Wire form of a one-variable series: every number is an exact integer
/// string; each term is `[exponent_num, exponent_den, coeff_num, coeff_den]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesJson {
    pub grid_step: String,
    pub trunc_order: String,
    pub terms: Vec<[String; 4]>,
}

fn rat_str(r: &Rat) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

impl SeriesJson {
    pub fn from_series(s: &Series) -> Self {
        let grid_step = match s.grid() {
            Grid::One => "1".to_string(),
            Grid::Half => "1/2".to_string(),
        };
        let trunc = s.trunc_order();
        let trunc_order = if trunc.is_integer() {
            trunc.numer().to_string()
        } else {
            format!("{}/{}", trunc.numer(), trunc.denom())
        };
        let terms = s
            .terms()
            .map(|(e, c)| {
                let ev = s.grid().exponent_value(e);
                let (en, ed) = rat_str(&ev);
                let (cn, cd) = rat_str(c);
                [en, ed, cn, cd]
            })
            .collect();
        SeriesJson { grid_step, trunc_order, terms }
    }

    pub fn to_series(&self) -> Result<Series, String> {
        let grid = match self.grid_step.as_str() {
            "1" => Grid::One,
            "1/2" => Grid::Half,
            other => return Err(format!("unknown grid_step {:?}", other)),
        };
        let trunc_units = parse_exponent_units(&self.trunc_order, grid)?;
        let mut terms = Vec::new();
        for [en, ed, cn, cd] in &self.terms {
            let exp = parse_rat(en, ed)?;
            let coeff = parse_rat(cn, cd)?;
            let units = rat_to_units(&exp, grid)?;
            terms.push((units, coeff));
        }
        Ok(Series::from_terms(grid, &terms, trunc_units))
    }
}

fn parse_rat(n: &str, d: &str) -> Result<Rat, String> {
    let num = BigInt::from_str(n).map_err(|e| e.to_string())?;
    let den = BigInt::from_str(d).map_err(|e| e.to_string())?;
    if den.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(Rat::new(num, den))
}

fn parse_exponent_units(s: &str, grid: Grid) -> Result<i64, String> {
    let r = match s.split_once('/') {
        Some((n, d)) => parse_rat(n, d)?,
        None => parse_rat(s, "1")?,
    };
    rat_to_units(&r, grid)
}

fn rat_to_units(r: &Rat, grid: Grid) -> Result<i64, String> {
    use num_traits::ToPrimitive;
    let scaled = r * Rat::from_integer(BigInt::from(grid.units_per_t()));
    if !scaled.is_integer() {
        return Err(format!("exponent {} is not on the grid", r));
    }
    scaled.to_integer().to_i64().ok_or_else(|| "exponent overflow".to_string())
}

/// CSV export: header plus one row per stored exponent.
pub fn series_to_csv(s: &Series) -> String {
    let mut out = String::from("exponent,coefficient\n");
    for (e, c) in s.terms() {
        out.push_str(&format!("{},{}\n", s.grid().exponent_value(e), c));
    }
    out
}

/// Wire form of a two-variable series: per power of `t`, the `z`-polynomial
/// as a list of `[coeff_num, coeff_den]` starting at degree zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Series2Json {
    pub trunc_order_t: i64,
    pub coeffs: Vec<Series2Coeff>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Series2Coeff {
    pub t_power: i64,
    pub z_poly: Vec<[String; 2]>,
}

impl Series2Json {
    pub fn from_series(s: &Series2) -> Self {
        let mut coeffs = Vec::new();
        for n in 0..=s.trunc_order().max(-1) {
            let p = s.coeff(n);
            if p.is_zero() {
                continue;
            }
            let z_poly = p
                .coeffs()
                .iter()
                .map(|c| {
                    let (n, d) = rat_str(c);
                    [n, d]
                })
                .collect();
            coeffs.push(Series2Coeff { t_power: n, z_poly });
        }
        Series2Json { trunc_order_t: s.trunc_order(), coeffs }
    }
}

pub fn series2_to_csv(s: &Series2) -> String {
    let mut out = String::from("t_power,z_power,coefficient\n");
    for n in 0..=s.trunc_order().max(-1) {
        for (k, c) in s.coeff(n).coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.push_str(&format!("{},{},{}\n", n, k, c));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn json_round_trip_integer_grid() {
        let s = Series::from_terms(Grid::One, &[(0, rat(1)), (3, ratio(-5, 7))], 6);
        let j = SeriesJson::from_series(&s);
        assert_eq!(j.grid_step, "1");
        assert_eq!(j.trunc_order, "6");
        let back = j.to_series().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_round_trip_half_grid() {
        let s = Series::from_terms(Grid::Half, &[(-1, rat(2)), (3, ratio(1, 3))], 7);
        let j = SeriesJson::from_series(&s);
        assert_eq!(j.grid_step, "1/2");
        assert_eq!(j.trunc_order, "7/2");
        assert_eq!(j.terms[0], ["-1".to_string(), "2".to_string(), "2".to_string(), "1".to_string()]);
        let back = j.to_series().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn csv_has_one_row_per_exponent() {
        let s = Series::from_terms(Grid::One, &[(0, rat(1)), (2, rat(9))], 4);
        let csv = series_to_csv(&s);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(2).unwrap().starts_with("2,"));
    }
}
