//! Shipped examples: `A_n` on `F_p[x]`, the node, the cusp and point
//! modules on the Fermat cubic cone.

use serde_json::json;

use super::bundle::{parse_bundle, Bundle, Entry, LoadOptions};
use super::Record;
use crate::error::Result;
use crate::mf::{hom_space_dimension, is_contractible, MatrixFactorization};
use crate::module::{kernel_modulo, module_groebner, Dim, FPModule, Over};
use crate::singcat::{
    cok, free_resolution_r, mcm_check, round_trip, stabilize, stable_hom_dimension,
    verify_fully_faithful, Verdict,
};

pub const CASE_NAMES: [&str; 8] = ["a1", "a2", "a3", "a4", "a5", "node", "cusp", "cubic"];

const NODE: &str = "\
ring 32003 x y
potential x*y
mf X 1
x
/
y
mf Y 1
y
/
x
module Rx 1
x
module k 1
x
y
module free 1
";

const CUSP: &str = "\
ring 32003 x y
potential x^3 - y^2
mf C 2
x, y
y, x^2
/
x^2, -y
-y, x
module k 1
x
y
";

const CUBIC: &str = "\
ring 32003 x y z
potential x^3 + y^3 + z^3
mf P 2
x + y, z
-z^2, x^2 - x*y + y^2
/
x^2 - x*y + y^2, -z
z^2, x + y
mf Q 2
x + z, y
-y^2, x^2 - x*z + z^2
/
x^2 - x*z + z^2, -y
y^2, x + z
mf T 2
y + z, x
-x^2, y^2 - y*z + z^2
/
y^2 - y*z + z^2, -x
x^2, y + z
module k 1
x
y
z
";

/// `W = x^(n+1)` with `E_a = (x^a, x^(n+1-a))` for `1 <= a <= n`.
fn a_n_text(n: usize) -> String {
    let mut s = format!("ring 32003 x\npotential x^{}\n", n + 1);
    for a in 1..=n {
        s.push_str(&format!("mf E{a} 1\nx^{a}\n/\nx^{}\n", n + 1 - a));
    }
    s.push_str("module k 1\nx\n");
    s
}

/// Bundle text of a catalog case.
pub fn case_text(name: &str) -> Option<String> {
    match name {
        "node" => Some(NODE.to_string()),
        "cusp" => Some(CUSP.to_string()),
        "cubic" => Some(CUBIC.to_string()),
        _ => {
            let n: usize = name.strip_prefix('a')?.parse().ok()?;
            (1..=5).contains(&n).then(|| a_n_text(n))
        }
    }
}

pub fn load_case(name: &str, opts: &LoadOptions) -> Result<Option<Bundle>> {
    match case_text(name) {
        Some(text) => parse_bundle(&text, opts).map(Some),
        None => Ok(None),
    }
}

/// `dim Hom(E_a, E_b)` on `A_n`.
pub fn a_n_expected(n: usize, a: usize, b: usize) -> u64 {
    a.min(b).min(n + 1 - a).min(n + 1 - b) as u64
}

fn objects(b: &Bundle) -> Vec<(String, MatrixFactorization)> {
    b.entries()
        .iter()
        .filter_map(|e| match e {
            Entry::Mf(n, m) => Some((n.clone(), m.clone())),
            _ => None,
        })
        .collect()
}

fn modules(b: &Bundle) -> Vec<(String, FPModule)> {
    b.entries()
        .iter()
        .filter_map(|e| match e {
            Entry::Module(n, m) => Some((n.clone(), m.clone())),
            _ => None,
        })
        .collect()
}

/// `im(a) = ker(b)` over `R`, compared as module Gröbner bases.
fn image_is_kernel(e: &MatrixFactorization, swap: bool) -> Result<bool> {
    let (a, b) = if swap { (e.e1(), e.e0()) } else { (e.e0(), e.e1()) };
    let ctx = e.context();
    let r = e.rank();
    let image = module_groebner(ctx, r, &a.columns(), Over::R)?;
    let kernel = module_groebner(ctx, r, &kernel_modulo(ctx, b, &[], Over::R)?, Over::R)?;
    Ok(image.generators() == kernel.generators())
}

fn record(case: &str, op: &str, expected: serde_json::Value, got: serde_json::Value) -> Record {
    let pass = expected == got;
    Record {
        case: case.to_string(),
        op: op.to_string(),
        expected,
        got,
        pass,
    }
}

fn dim_json(d: Dim) -> serde_json::Value {
    match d {
        Dim::Finite(n) => json!(n),
        Dim::Infinite => json!("infinite"),
    }
}

/// Run every check on one case. Returns the records and a text summary.
pub fn run_case(name: &str, bundle: &Bundle) -> Result<(Vec<Record>, String)> {
    let mut recs = Vec::new();
    let mut text = String::new();
    let objs = objects(bundle);

    for (n, e) in &objs {
        let case = format!("{name}/{n}");
        let valid = MatrixFactorization::new(e.context(), e.e1().clone(), e.e0().clone()).is_ok();
        recs.push(record(&case, "mf_new", json!(true), json!(valid)));
        recs.push(record(&case, "shift2", json!(true), json!(e.shift().shift() == *e)));
        let periodic = image_is_kernel(e, false)? && image_is_kernel(e, true)?;
        recs.push(record(&case, "image=kernel", json!(true), json!(periodic)));
        let res = free_resolution_r(&cok(e)?, 6)?;
        let constant = res.ranks.iter().all(|&b| b == res.ranks[0]);
        recs.push(record(
            &case,
            "periodic_from",
            json!([0, true]),
            json!([res.periodic_from, constant]),
        ));
        recs.push(record(&case, "mcm", json!(true), json!(mcm_check(&cok(e)?)?)));
        recs.push(record(&case, "round-trip", json!(true), json!(round_trip(e)?.equivalence)));
        let contractible = is_contractible(e)?.is_null();
        let stable_end = stable_hom_dimension(&cok(e)?, &cok(e)?)?.dimension;
        recs.push(record(
            &case,
            "reflects-zero",
            json!(contractible),
            json!(stable_end == Dim::Finite(0)),
        ));
    }

    let mut table = Vec::new();
    for (n1, e) in &objs {
        let mut row = Vec::new();
        for (n2, f) in &objs {
            let rep = verify_fully_faithful(e, f)?;
            for (label, c) in [("", rep.direct), ("[1]", rep.shifted)] {
                let mut r = record(
                    &format!("{name}/{n1},{n2}{label}"),
                    "verify-ff",
                    dim_json(c.mf_side),
                    dim_json(c.module_side),
                );
                r.pass = c.verdict == Verdict::Pass;
                recs.push(r);
            }
            row.push(rep.direct.mf_side);
        }
        table.push(row);
    }

    if let Some(n) = name.strip_prefix('a').and_then(|s| s.parse::<usize>().ok()) {
        for a in 1..=n {
            for b in 1..=n {
                let got = hom_space_dimension(&objs[a - 1].1, &objs[b - 1].1)?;
                recs.push(record(
                    &format!("{name}/E{a},E{b}"),
                    "homdim",
                    json!(a_n_expected(n, a, b)),
                    dim_json(got),
                ));
            }
        }
    }

    for (n, m) in modules(bundle) {
        let case = format!("{name}/{n}");
        let e = stabilize(&m)?;
        let valid = MatrixFactorization::new(e.context(), e.e1().clone(), e.e0().clone()).is_ok();
        recs.push(record(&case, "stabilize", json!(true), json!(valid)));
        recs.push(record(&case, "round-trip", json!(true), json!(round_trip(&e)?.equivalence)));
    }

    text.push_str(&format!("{name}: hom dimensions\n"));
    for (i, row) in table.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(Dim::to_string).collect();
        text.push_str(&format!("  {:<4} {}\n", objs[i].0, cells.join(" ")));
    }
    let failed: Vec<&Record> = recs.iter().filter(|r| !r.pass).collect();
    if failed.is_empty() {
        text.push_str(&format!("{name}: PASS ({} checks)\n", recs.len()));
    } else {
        for r in &failed {
            text.push_str(&format!("{name}: FAIL {} {} expected {} got {}\n", r.case, r.op, r.expected, r.got));
        }
    }
    Ok((recs, text))
}
