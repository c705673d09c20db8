//! Acceptance gate. Every criterion is exact; each prints one PASS/FAIL line
//! and the process exits nonzero if any fails.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use klein_cli::commands::{cmd_verify_all, Format};
use klein_cli::verify::{removal_orders, DEFAULT_SEED};
use klein_cli::ExitCode;
use klein_grassmannian::export::{from_json, to_json};
use klein_grassmannian::geometry::{all_lines, quadric_points};
use klein_grassmannian::grassmannian::KSubset;
use klein_grassmannian::*;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn canonical() -> QuadraticForm {
    QuadraticForm::canonical_hyperbolic()
}

fn heptads() -> Vec<Heptad> {
    let f = canonical();
    let g = build_collinearity_graph(&off_quadric_points(&f), &external_lines(&f)).unwrap();
    find_heptads(&g)
}

fn c1_off_quadric_points() -> Outcome {
    let computed: HashSet<ProjPoint> = off_quadric_points(&canonical()).into_iter().collect();
    let table: HashSet<ProjPoint> = PaperFixtures::embedded()
        .table1_points()
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    check(computed.len() == 28, format!("{} points", computed.len()))?;
    check(computed == table, "point set differs from the table")?;
    Ok("28 points, equal to the point table".into())
}

fn c2_external_lines() -> Outcome {
    let fx = PaperFixtures::embedded();
    let idx: HashMap<ProjPoint, usize> = fx
        .table1_points()
        .map_err(|e| e.to_string())?
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, i + 1))
        .collect();
    let computed: BTreeSet<[usize; 3]> = external_lines(&canonical())
        .iter()
        .map(|l| {
            let mut t = l.points().map(|p| idx[&p]);
            t.sort();
            t
        })
        .collect();
    let table: BTreeSet<[usize; 3]> = fx.table2.iter().copied().collect();
    check(computed.len() == 56, format!("{} lines", computed.len()))?;
    check(computed == table, "line triples differ from the line table")?;
    Ok("56 lines, equal to the line table as index triples".into())
}

fn c3_params() -> Outcome {
    let p = off_quadric_structure(&canonical())
        .measure_params()
        .map_err(|e| e.to_string())?;
    check(p.as_tuple() == (28, 6, 56, 3), format!("measured {p}"))?;
    Ok(format!("measured {p}"))
}

fn c4_isomorphism() -> Outcome {
    let off = off_quadric_structure(&canonical());
    let g = build_grassmannian(2, 8).unwrap();
    let cert = PaperFixtures::embedded()
        .bijection_certificate()
        .ok_or("bijection table unusable")?;
    check(
        verify_certificate(&off, &g, &cert) == Ok(true),
        "published bijection rejected",
    )?;
    let start = Instant::now();
    let found = find_isomorphism(&off, &g).ok_or("search found nothing")?;
    let elapsed = start.elapsed();
    check(
        verify_certificate(&off, &g, &found) == Ok(true),
        "search certificate rejected",
    )?;
    check(
        elapsed < Duration::from_secs(1),
        format!("search took {elapsed:?}"),
    )?;
    Ok(format!("published bijection verified; search found one in {elapsed:?}"))
}

fn c5_heptads() -> Outcome {
    let hs = heptads();
    check(hs.len() == 8, format!("{} heptads", hs.len()))?;
    heptad_pair_intersections(&hs, &off_quadric_points(&canonical())).map_err(|e| e.to_string())?;
    let t = PaperFixtures::embedded().table1_points().unwrap();
    let last = Heptad::new(t[21..].to_vec());
    let pos = hs.iter().position(|h| *h == last).ok_or("rows 22-28 not a heptad")?;
    let cert = PaperFixtures::embedded().bijection_certificate().unwrap();
    let marks = heptads_vs_marks(&hs, &cert).map_err(|e| e.to_string())?;
    check(marks[pos] == 8, format!("rows 22-28 carry mark {}", marks[pos]))?;
    Ok("8 heptads, pairwise meeting in 1 point, each point covered twice, rows 22-28 <-> mark 8".into())
}

fn c6_removal_sequence() -> Outcome {
    let off = off_quadric_structure(&canonical());
    let hs = heptads();
    let expected: [Option<(usize, usize, usize, usize)>; 8] = [
        Some((28, 6, 56, 3)),
        Some((21, 5, 35, 3)),
        Some((15, 4, 20, 3)),
        Some((10, 3, 10, 3)),
        Some((6, 2, 4, 3)),
        Some((3, 1, 1, 3)),
        Some((1, 0, 0, 3)),
        None,
    ];
    let orders = removal_orders(8, DEFAULT_SEED, 5);
    check(orders.len() >= 6, "need identity plus five shuffled orders")?;
    for order in &orders {
        let steps = removal_sequence(&off, &hs, order).map_err(|e| e.to_string())?;
        check(steps.len() == 8, format!("{order:?}: {} steps", steps.len()))?;
        for (t, step) in steps.iter().enumerate() {
            let got = step.params.map(|p| p.as_tuple());
            check(
                got == expected[t],
                format!("{order:?} step {t}: {got:?} != {:?}", expected[t]),
            )?;
            if t <= 6 {
                let g = build_grassmannian(2, 8 - t).unwrap();
                let ok = step
                    .certificate
                    .as_ref()
                    .map(|c| verify_certificate(&step.structure, &g, c) == Ok(true))
                    .unwrap_or(false);
                check(ok, format!("{order:?} step {t}: not isomorphic to G_2({})", 8 - t))?;
            } else {
                check(step.is_empty(), format!("{order:?} step 7 not empty"))?;
            }
        }
    }
    Ok(format!("{} orders match the nested table; each step ≅ G_2(8-t)", orders.len()))
}

fn c7_properties() -> Outcome {
    let lines = all_lines();
    check(lines.len() == 651, format!("{} lines", lines.len()))?;
    for l in &lines {
        let [a, b, c] = l.points();
        check(
            a.sum(b) == Some(c) && a.sum(c) == Some(b) && b.sum(c) == Some(a),
            format!("{l:?} not closed"),
        )?;
    }
    let on = quadric_points(&canonical()).len();
    let off = off_quadric_points(&canonical()).len();
    check(on == 35 && off == 28 && on + off == 63, format!("{on} + {off}"))?;

    let mut structures = vec![off_quadric_structure(&canonical())];
    for n in 1..=8 {
        for k in 1..=n {
            let g = build_grassmannian(k, n).unwrap();
            let measured = g
                .measure_params_with_line_size(k + 1)
                .map_err(|e| e.to_string())?;
            let formula = grassmannian_params(k, n).unwrap();
            check(measured == formula, format!("G_{k}({n}): {measured} != {formula}"))?;
            structures.push(g);
        }
    }
    for s in &structures {
        check(
            s.num_flags() == s.point_degrees().iter().sum::<usize>(),
            format!("flag count of {}", s.name()),
        )?;
    }

    // 20 sampled mark permutations for each N, from a fixed generator
    let mut state = 0x2545_f491_4f6c_dd1du64;
    for n in 4..=8usize {
        let g = build_grassmannian(2, n).unwrap();
        for _ in 0..20 {
            let mut perm: Vec<u8> = (1..=n as u8).collect();
            for i in (1..n).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                perm.swap(i, (state % (i as u64 + 1)) as usize);
            }
            let cert = IsoCertificate::new(
                g.points()
                    .iter()
                    .map(|p| {
                        let s: KSubset = p.id.parse().unwrap();
                        (p.id.clone(), s.permuted(&perm).to_string())
                    })
                    .collect(),
            );
            check(
                verify_certificate(&g, &g, &cert) == Ok(true),
                format!("G_2({n}) permutation {perm:?}"),
            )?;
        }
    }
    Ok("line closure, 35+28=63, flag counts, 36 Grassmannian formulas, 100 mark permutations".into())
}

fn c8_automorphisms() -> Outcome {
    let start = Instant::now();
    for (n, expected) in [(4usize, 24u64), (5, 120)] {
        let g = build_grassmannian(2, n).unwrap();
        // oracle: distinct automorphisms induced by all n! mark permutations
        let mut induced = HashSet::new();
        let mut perm: Vec<u8> = (1..=n as u8).collect();
        loop {
            let mapping: Vec<(String, String)> = g
                .points()
                .iter()
                .map(|p| {
                    let s: KSubset = p.id.parse().unwrap();
                    (p.id.clone(), s.permuted(&perm).to_string())
                })
                .collect();
            let cert = IsoCertificate::new(mapping.clone());
            check(verify_certificate(&g, &g, &cert) == Ok(true), "induced map rejected")?;
            induced.insert(mapping);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        check(induced.len() as u64 == expected, format!("oracle gave {}", induced.len()))?;
        let counted = count_automorphisms(&g, 1_000_000).map_err(|e| e.to_string())?;
        check(counted == expected, format!("G_2({n}): counted {counted}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("|Aut G_2(4)| = 24, |Aut G_2(5)| = 120 in {elapsed:?}"))
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn c9_cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_klein");
    let status = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .map(|o| o.status.code())
            .map_err(|e| e.to_string())
    };
    check(status(&["verify-all", "--quiet"])? == Some(0), "verify-all did not exit 0")?;

    let mut fx = PaperFixtures::embedded();
    fx.table2[0] = [1, 4, 10];
    let (code, report) = cmd_verify_all(&fx, DEFAULT_SEED, 5, Format::Text, true, None, &mut Vec::new())
        .map_err(|e| e.to_string())?;
    check(code == ExitCode::VerificationFailed, format!("perturbed run gave {code:?}"))?;
    check(
        report.failures().iter().any(|f| f.starts_with("table2 row 1")),
        "perturbed run did not name table2 row 1",
    )?;

    check(
        status(&["iso", "grassmannian", "2", "4", "grassmannian", "2", "5"])? == Some(2),
        "mismatched iso did not exit 2",
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (name, s) in [
        ("off.json", off_quadric_structure(&canonical())),
        ("g28.json", build_grassmannian(2, 8).unwrap()),
    ] {
        let text = to_json(&s);
        check(from_json(&text).map_err(|e| e.to_string())? == s, format!("{name} changed"))?;
        let path = dir.path().join(name);
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
        check(
            status(&["iso", path.to_str().unwrap(), "off-structure", "--quiet"])? == Some(0),
            format!("{name} not isomorphic after round trip"),
        )?;
    }
    Ok("verify-all 0, perturbed table 1, mismatched iso 2, JSON round trip".into())
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("1 off-quadric enumeration", c1_off_quadric_points),
        ("2 external lines", c2_external_lines),
        ("3 configuration parameters", c3_params),
        ("4 isomorphism", c4_isomorphism),
        ("5 heptads", c5_heptads),
        ("6 removal sequence", c6_removal_sequence),
        ("7 property suite", c7_properties),
        ("8 automorphism counts", c8_automorphisms),
        ("9 CLI contract", c9_cli_contract),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
