//! JSON wire format for maps and hypermaps (1-based dart indices).

use super::{DartMap, Hypermap, MapError};
use serde::{Deserialize, Serialize};

/// `{n_darts, sigma, alpha, colors?, labels?, root_dart?, pointed_vertex?}`
/// with 1-based dart indices; `colors` holds one `"dark"`/`"light"` entry
/// per face, `labels` one integer per vertex.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapJson {
    pub n_darts: usize,
    pub sigma: Vec<usize>,
    pub alpha: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_dart: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointed_vertex: Option<usize>,
}

impl MapJson {
    pub fn from_map(m: &DartMap) -> Self {
        MapJson {
            n_darts: m.n_darts(),
            sigma: (0..m.n_darts()).map(|d| m.sigma(d) + 1).collect(),
            alpha: (0..m.n_darts()).map(|d| m.alpha(d) + 1).collect(),
            colors: None,
            labels: None,
            root_dart: None,
            pointed_vertex: None,
        }
    }

    pub fn from_hypermap(h: &Hypermap) -> Self {
        let mut j = MapJson::from_map(h.map());
        j.colors = Some(
            (0..h.map().n_faces())
                .map(|f| if h.is_dark(f) { "dark".to_string() } else { "light".to_string() })
                .collect(),
        );
        j
    }

    pub fn with_labels(mut self, labels: &[i64]) -> Self {
        self.labels = Some(labels.to_vec());
        self
    }

    pub fn with_root(mut self, root: usize) -> Self {
        self.root_dart = Some(root + 1);
        self
    }

    pub fn with_pointed(mut self, v: usize) -> Self {
        self.pointed_vertex = Some(v);
        self
    }

    pub fn to_map(&self) -> Result<DartMap, MapError> {
        let fix = |v: &[usize]| -> Result<Vec<usize>, MapError> {
            v.iter()
                .map(|&d| d.checked_sub(1).ok_or(MapError::NotPermutation))
                .collect()
        };
        DartMap::new(fix(&self.sigma)?, fix(&self.alpha)?)
    }

    pub fn to_hypermap(&self) -> Result<Hypermap, MapError> {
        let map = self.to_map()?;
        match &self.colors {
            None => Hypermap::bicolor(map, None),
            Some(colors) => {
                let dark = colors.iter().map(|c| c == "dark").collect();
                Hypermap::new(map, dark)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::build;

    #[test]
    fn map_json_round_trip() {
        let m = build::triangle();
        let j = MapJson::from_map(&m);
        assert_eq!(j.n_darts, 6);
        assert!(j.sigma.iter().all(|&d| (1..=6).contains(&d)));
        let back = j.to_map().unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn hypermap_json_round_trip() {
        let h = Hypermap::bicolor(build::double_edge(), None).unwrap();
        let j = MapJson::from_hypermap(&h);
        let back = j.to_hypermap().unwrap();
        assert_eq!(back.dark_flags(), h.dark_flags());
    }
}
