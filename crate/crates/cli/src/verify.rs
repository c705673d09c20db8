//! Cross-checks every published table against values computed from scratch.

use std::collections::{BTreeSet, HashMap};

use klein_grassmannian::conwell::heptad_joining_lines;
use klein_grassmannian::{
    build_collinearity_graph, build_grassmannian, external_lines, find_heptads, find_isomorphism,
    grassmannian_params, heptad_pair_intersections, heptads_vs_marks, off_quadric_points,
    off_quadric_structure, removal_sequence, verify_certificate, Heptad, PaperFixtures, ProjPoint,
    QuadraticForm,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 0x6b_6c65_696e;
pub const RANDOM_ORDERS: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
    pub details: Value,
}

impl SuiteResult {
    fn new(name: &'static str, failures: Vec<String>, details: Value) -> Self {
        SuiteResult {
            name,
            passed: failures.is_empty(),
            failures,
            details,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub seed: u64,
    /// Measured `(n, r, m, k)` of the off-quadric structure.
    pub params: Option<[usize; 4]>,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<&str> {
        self.suites
            .iter()
            .flat_map(|s| s.failures.iter().map(String::as_str))
            .collect()
    }
}

/// Runs the five suites: point table, line table, bijection, heptads and
/// the removal sequence (identity order plus `random_orders` shuffled ones).
pub fn verify_all(fx: &PaperFixtures, seed: u64, random_orders: usize) -> VerifyReport {
    let form = QuadraticForm::canonical_hyperbolic();
    let off = off_quadric_structure(&form);
    let params = off.measure_params().ok().map(|p| p.as_array());
    let heptads = {
        let g = build_collinearity_graph(&off_quadric_points(&form), &external_lines(&form))
            .expect("external lines lie off the quadric");
        find_heptads(&g)
    };
    let suites = vec![
        check_table1(fx, &heptads),
        check_table2(fx, params),
        check_bijection(fx),
        check_heptads(fx, &heptads),
        check_sequence(fx, &heptads, seed, random_orders),
    ];
    VerifyReport {
        passed: suites.iter().all(|s| s.passed),
        seed,
        params,
        suites,
    }
}

/// Table rows as points, reporting unusable rows.
fn table_points(fx: &PaperFixtures, failures: &mut Vec<String>) -> Vec<Option<ProjPoint>> {
    fx.table1
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            ProjPoint::from_coords(c)
                .map_err(|e| failures.push(format!("table1 row {}: {e}", i + 1)))
                .ok()
        })
        .collect()
}

fn check_table1(fx: &PaperFixtures, heptads: &[Heptad]) -> SuiteResult {
    let form = QuadraticForm::canonical_hyperbolic();
    let mut failures = Vec::new();
    let rows = table_points(fx, &mut failures);
    let mut first_row: HashMap<ProjPoint, usize> = HashMap::new();
    for (i, p) in rows.iter().enumerate() {
        let Some(p) = *p else { continue };
        if form.eval(p) != 1 {
            failures.push(format!("table1 row {}: {p} lies on the quadric", i + 1));
        }
        if let Some(j) = first_row.insert(p, i + 1) {
            failures.push(format!("table1 row {}: duplicates row {j}", i + 1));
        }
    }
    let computed: BTreeSet<ProjPoint> = off_quadric_points(&form).into_iter().collect();
    for p in &computed {
        if !first_row.contains_key(p) {
            failures.push(format!("table1: off-quadric point {p} is missing"));
        }
    }
    if rows.len() != computed.len() {
        failures.push(format!(
            "table1: {} rows, expected {}",
            rows.len(),
            computed.len()
        ));
    }
    // the ordering puts one Conwell heptad last
    let tail: Vec<ProjPoint> = rows.iter().skip(21).flatten().copied().collect();
    if !heptads.contains(&Heptad::new(tail)) {
        failures.push("table1 rows 22-28: not a Conwell heptad".to_owned());
    }
    SuiteResult::new(
        "table1",
        failures,
        json!({ "rows": rows.len(), "off_quadric_points": computed.len() }),
    )
}

fn check_table2(fx: &PaperFixtures, params: Option<[usize; 4]>) -> SuiteResult {
    let form = QuadraticForm::canonical_hyperbolic();
    let mut failures = Vec::new();
    let rows = table_points(fx, &mut Vec::new());
    let index: HashMap<ProjPoint, usize> = rows
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| (p, i + 1)))
        .collect();
    let mut computed = BTreeSet::new();
    for line in external_lines(&form) {
        let idx: Option<Vec<usize>> = line.points().iter().map(|p| index.get(p).copied()).collect();
        match idx {
            Some(mut t) => {
                t.sort_unstable();
                computed.insert(t);
            }
            None => failures.push(format!(
                "table2: external line {:?} uses a point missing from table1",
                line.points().map(|p| p.to_string())
            )),
        }
    }
    let mut listed = BTreeSet::new();
    for (i, row) in fx.table2.iter().enumerate() {
        let mut t = row.to_vec();
        t.sort_unstable();
        let shown = format!("{{{},{},{}}}", row[0], row[1], row[2]);
        if !computed.contains(&t) {
            failures.push(format!("table2 row {}: {shown} is not an external line", i + 1));
        }
        if !listed.insert(t) {
            failures.push(format!("table2 row {}: {shown} is listed twice", i + 1));
        }
    }
    for t in computed.difference(&listed) {
        failures.push(format!("table2: external line {t:?} is missing"));
    }
    if params != Some([28, 6, 56, 3]) {
        failures.push(format!("table2: measured parameters {params:?}, expected (28_6, 56_3)"));
    }
    SuiteResult::new(
        "table2",
        failures,
        json!({ "rows": fx.table2.len(), "external_lines": computed.len(), "params": params }),
    )
}

fn check_bijection(fx: &PaperFixtures) -> SuiteResult {
    let off = off_quadric_structure(&QuadraticForm::canonical_hyperbolic());
    let g = build_grassmannian(2, 8).expect("valid arity");
    let mut failures = Vec::new();
    match fx.bijection_certificate() {
        None => failures.push("bijection: table rows are not points and mark pairs".to_owned()),
        Some(cert) => match verify_certificate(&off, &g, &cert) {
            Ok(true) => {}
            Ok(false) => {
                failures.push("bijection: does not map the external lines onto G_2(8)".to_owned())
            }
            Err(e) => failures.push(format!("bijection: {e}")),
        },
    }
    let found = find_isomorphism(&off, &g);
    if found.is_none() {
        failures.push("bijection: search found no isomorphism onto G_2(8)".to_owned());
    }
    SuiteResult::new(
        "bijection",
        failures,
        json!({ "search_found_certificate": found.is_some() }),
    )
}

fn check_heptads(fx: &PaperFixtures, heptads: &[Heptad]) -> SuiteResult {
    let form = QuadraticForm::canonical_hyperbolic();
    let mut failures = Vec::new();
    if heptads.len() != 8 {
        failures.push(format!("heptads: found {}, expected 8", heptads.len()));
    }
    if let Err(e) = heptad_pair_intersections(heptads, &off_quadric_points(&form)) {
        failures.push(format!("heptads: {e}"));
    }
    let ext = external_lines(&form);
    for (i, h) in heptads.iter().enumerate() {
        if let Err(e) = heptad_joining_lines(i, h, &ext) {
            failures.push(format!("heptads: {e}"));
        }
    }
    let mut marks = Vec::new();
    match fx.bijection_certificate() {
        None => failures.push("heptads: bijection table unusable".to_owned()),
        Some(cert) => match heptads_vs_marks(heptads, &cert) {
            Ok(m) => marks = m,
            Err(e) => failures.push(format!("heptads: {e}")),
        },
    }
    let rows = table_points(fx, &mut Vec::new());
    let tail = Heptad::new(rows.iter().skip(21).flatten().copied().collect());
    match heptads.iter().position(|h| *h == tail) {
        None => failures.push("heptads: rows 22-28 are not among the heptads".to_owned()),
        Some(i) if !marks.is_empty() && marks[i] != 8 => {
            failures.push(format!("heptads: rows 22-28 carry mark {}, expected 8", marks[i]))
        }
        Some(_) => {}
    }
    SuiteResult::new(
        "heptads",
        failures,
        json!({ "count": heptads.len(), "marks": marks }),
    )
}

/// Identity order followed by `count` seeded shuffles.
pub fn removal_orders(n: usize, seed: u64, count: usize) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Vec<usize> = (0..n).collect();
    let mut orders = vec![identity.clone()];
    for _ in 0..count {
        let mut o = identity.clone();
        o.shuffle(&mut rng);
        orders.push(o);
    }
    orders
}

fn check_sequence(
    fx: &PaperFixtures,
    heptads: &[Heptad],
    seed: u64,
    random_orders: usize,
) -> SuiteResult {
    let off = off_quadric_structure(&QuadraticForm::canonical_hyperbolic());
    let mut failures = Vec::new();
    for row in &fx.nested {
        if let (Some(p), Some(n)) = (row.params, row.grassmannian_n) {
            if grassmannian_params(2, n).ok() != Some(p) {
                failures.push(format!(
                    "nested row {}: {p} is not the parameter set of G_2({n})",
                    row.heptads_removed
                ));
            }
        }
    }
    let orders = removal_orders(heptads.len(), seed, random_orders);
    for order in &orders {
        let steps = match removal_sequence(&off, heptads, order) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("sequence {order:?}: {e}"));
                continue;
            }
        };
        if steps.len() != fx.nested.len() {
            failures.push(format!(
                "sequence {order:?}: {} steps, expected {}",
                steps.len(),
                fx.nested.len()
            ));
        }
        for (step, row) in steps.iter().zip(&fx.nested) {
            let t = step.step;
            if step.params != row.params {
                failures.push(format!(
                    "sequence {order:?} step {t}: measured {:?}, expected {:?}",
                    step.params.map(|p| p.to_string()),
                    row.params.map(|p| p.to_string())
                ));
            }
            if step.grassmannian_n != row.grassmannian_n {
                failures.push(format!("sequence {order:?} step {t}: wrong Grassmannian"));
            } else if step.grassmannian_n.is_some() && step.certificate.is_none() {
                failures.push(format!(
                    "sequence {order:?} step {t}: not isomorphic to G_2({})",
                    row.grassmannian_n.unwrap_or_default()
                ));
            }
            if step.remark != row.remark.as_deref() {
                failures.push(format!(
                    "sequence {order:?} step {t}: remark {:?}, expected {:?}",
                    step.remark, row.remark
                ));
            }
        }
    }
    SuiteResult::new(
        "sequence",
        failures,
        json!({ "orders": orders }),
    )
}
