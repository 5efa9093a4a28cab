//! Writes a corpus of sampled instances, their expected surface germs, and two
//! negative controls into a directory.
//!
//! `cargo run --release --example make_corpus -- corpus`

use std::fs;
use std::path::Path;

use fanolab::cubic_model::{base_vars, sample_generic_instance, sigma_singular_points, Instance};
use fanolab::fano_charts::{gamma_local_model, plane_search};
use fanolab::polyring::parse;
use fanolab::singclass::{format_multiset, SingularityKind, DEFAULT_JET_ORDER};
use serde_json::json;

const PER_TYPE: usize = 4;

fn write(path: &Path, inst: &Instance) {
    fs::write(path, serde_json::to_string_pretty(inst).unwrap() + "\n").unwrap();
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "corpus".into());
    let dir = Path::new(&dir);
    fs::create_dir_all(dir.join("negative")).unwrap();
    fs::create_dir_all(dir.join("instances")).unwrap();
    let mut expected = serde_json::Map::new();
    for i in 2..=4u32 {
        let mut kept = 0;
        for seed in 1u64.. {
            if kept == PER_TYPE {
                break;
            }
            let Ok(mut inst) = sample_generic_instance(i, seed) else { continue };
            let y = inst.fourfold().unwrap();
            if ![5, 7].iter().all(|&q| plane_search(&y, q).unwrap().lines.is_empty()) {
                continue;
            }
            let point = inst.sigma_point.clone().unwrap();
            let Ok(g) = gamma_local_model(&y, &point, DEFAULT_JET_ORDER) else { continue };
            let sigma = sigma_singular_points(&y, DEFAULT_JET_ORDER).unwrap();
            let name = format!("a{i}_seed{seed}.json");
            inst.label = Some(format!("A{i} seed {seed}"));
            write(&dir.join("instances").join(&name), &inst);
            expected.insert(
                name,
                json!({
                    "gamma_poly": g.gamma,
                    "type": g.singularity.kind,
                    "sigma": format_multiset(&sigma.multiset),
                }),
            );
            kept += 1;
        }
    }
    fs::write(dir.join("expected.json"), serde_json::to_string_pretty(&expected).unwrap() + "\n").unwrap();

    let v = base_vars();
    let plane = Instance {
        claimed_type: SingularityKind::A(2),
        seed: None,
        label: Some("contains the plane x3 = x4 = 0, x5 = -(x1 + x2)".into()),
        f2: parse("x2*x3 + x4^2", &v).unwrap(),
        f3: parse("(x1 + x2)^3 + x3^3 + x4^3 + x1*x3*x4", &v).unwrap(),
        sigma_point: None,
    };
    write(&dir.join("negative/planted_plane.json"), &plane);

    let mut wrong = sample_generic_instance(2, 1000).unwrap();
    wrong.claimed_type = SingularityKind::A(3);
    wrong.label = Some("an A2 instance labelled A3".into());
    write(&dir.join("negative/mislabeled.json"), &wrong);
}
