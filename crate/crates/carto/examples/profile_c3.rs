use std::time::Instant;

fn main() {
    use carto::twopoint::*;
    let arg = std::env::args().nth(1).unwrap_or_default();
    match arg.as_str() {
        "c3" => {
            for family in Family::all() {
                let trunc = match family {
                    Family::ThreeHypermap | Family::ThreeConstellation => 20,
                    _ => 30,
                };
                let t0 = Instant::now();
                let _rec = solve_recurrence(family, 8, trunc).unwrap();
                let d1 = t0.elapsed().as_secs_f64();
                let t0 = Instant::now();
                let _clo = closed_form(family, 8, trunc).unwrap();
                println!("{:?}: rec {:.1}s closed {:.1}s", family, d1, t0.elapsed().as_secs_f64());
            }
        }
        "c6" => {
            let t0 = Instant::now();
            let _ = continued_fraction_rs(&carto::rat::rat(1), 30).unwrap();
            println!("cf unweighted: {:.1}s", t0.elapsed().as_secs_f64());
            let t0 = Instant::now();
            let _ = continued_fraction_rs(&carto::rat::ratio(1, 2), 30).unwrap();
            println!("cf z=1/2: {:.1}s", t0.elapsed().as_secs_f64());
        }
        "c7" => {
            let t0 = Instant::now();
            let e = estimate_edge_constant(Family::GeneralMap, 1, 400).unwrap();
            println!("general estimate {:.6} in {:.1}s", e, t0.elapsed().as_secs_f64());
            let t0 = Instant::now();
            let e = estimate_edge_constant(Family::BipartiteMap, 1, 400).unwrap();
            println!("bipartite estimate {:.6} in {:.1}s", e, t0.elapsed().as_secs_f64());
        }
        "c1" => {
            use carto::bijections::suites::*;
            for (name, r) in [
                ("roundtrip", roundtrip_suite(4)),
                ("mirror", mirror_suite(4)),
                ("theorem1", theorem1_suite(4)),
                ("theorem2", theorem2_suite(4)),
                ("constellation", constellation_suite(4)),
                ("triples", triples_suite(3)),
            ] {
                println!("{}: {} instances {} failures", name, r.instances, r.failures.len());
            }
        }
        "c9" => {
            let t0 = Instant::now();
            let r = carto::oracle::sampler_check(2, 100_000, 20_260_808).unwrap();
            println!("sampler: chi2 {:.2} p {:.4} in {:.1}s", r.chi_square, r.p_value, t0.elapsed().as_secs_f64());
        }
        _ => eprintln!("usage: profile_c3 c1|c3|c6|c7|c9"),
    }
}
