//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;
mod manifest;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{operands, params, pow, q, value_of, Table};
use rn_arith::arithmetic::{add, check_associative, mul, sums_grid_exact, Associativity, CnNumber};
use rn_arith::lattice::{classify, neighbors, scale, window_enum, LatticePoint, Neighbors, SignSelection, Window};
use rn_arith::limit::{asymmetric_jump_demo, convergence_table, region_bounds, symmetric_jumps_between};
use rn_arith::measurement::{bin_of, to_kary, CoarseGrainRule, Outcome};
use rn_arith::ordering::{pred, succ};
use rn_arith::qm::{norm_check, Label, QState};
use rn_arith::{ExactRational, GridMode, GridParams, RnNumber, RoundMode};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn worked_arithmetic() -> Check {
    let p = params(2, 2);
    let lit = |s: &str| RnNumber::parse(s, p).unwrap();
    let cases = [
        (add(&lit("00.10e2"), &lit("00.10e1")), "+00.10e2", 8),
        (add(&lit("10.10e1"), &lit("11.10e1")), "+00.01e2", 8),
        (mul(&lit("11.10e2"), &lit("10.01e1")), "+00.01e4", 16),
    ];
    for (got, want, power) in cases {
        let got = got.map_err(|e| e.to_string())?;
        ensure!(got.to_string() == want, "got {got}, want {want}");
        // 00.10 and 00.01 read as 1/2 and 1/4 of the power of two
        let frac = if want.starts_with("+00.10") { q("1/2") } else { q("1/4") };
        ensure!(value_of(&got) == frac * pow(2, power), "{got} has the wrong value");
    }
    Ok(())
}

fn normalization_drift() -> Check {
    let p = GridParams::new(10, 2, GridMode::FreeExponent, RoundMode::RoundHalfUp).unwrap();
    let a = CnNumber::real(RnNumber::parse("57.74e-2", p).unwrap());
    let labels = ["alpha", "beta", "gamma"].map(|s| Label::Name(s.into())).to_vec();
    let psi = QState::new(p, labels, vec![a.clone(), a.clone(), a]).map_err(|e| e.to_string())?;
    let r = norm_check(&psi).map_err(|e| e.to_string())?;
    // 0.5774^2 = 0.33339076, to four figures 0.3334
    let square = q("0.5774") * q("0.5774");
    let rounded = (square * pow(10, 4) + q("1/2")).floor();
    let expected = ExactRational::from_integer(rounded * 3) * pow(10, -4);
    ensure!(expected == q("10002/10000"), "reference sum is {expected}");
    ensure!(r.rounded_square_sum == expected, "library sum is {}", r.rounded_square_sum);
    ensure!(r.residual == q("2/10000"), "residual {}", r.residual);
    Ok(())
}

fn oracle_equivalence() -> Check {
    for n in [1, 2] {
        let p = params(2, n);
        let xs = operands(p, -3, 3);
        let vals: Vec<ExactRational> = xs.iter().map(value_of).collect();
        let table = Table::new(p, -9, 9);
        for (a, va) in xs.iter().zip(&vals) {
            for (b, vb) in xs.iter().zip(&vals) {
                let s = add(a, b).map_err(|e| e.to_string())?;
                ensure!(s == table.round(&(va + vb), p.round()), "n={n}: {a} + {b} gave {s}");
                let m = mul(a, b).map_err(|e| e.to_string())?;
                ensure!(m == table.round(&(va * vb), p.round()), "n={n}: {a} * {b} gave {m}");
            }
        }
    }
    Ok(())
}

fn ordering_chain() -> Check {
    let p = params(2, 2);
    let start = RnNumber::parse("00.01e-2", p).unwrap();
    let end = RnNumber::parse("11.11e2", p).unwrap();
    let mut chain = vec![start];
    while chain.last() != Some(&end) {
        ensure!(chain.len() < 1000, "chain did not reach {end}");
        let next = succ(chain.last().unwrap()).map_err(|e| e.to_string())?.next;
        chain.push(next);
    }
    ensure!(chain.len() == 75, "visited {} points", chain.len());
    let vals: Vec<ExactRational> = chain.iter().map(value_of).collect();
    ensure!(vals.windows(2).all(|w| w[0] < w[1]), "not ascending");
    for (i, w) in vals.windows(3).enumerate() {
        let (left, right) = (&w[1] - &w[0], &w[2] - &w[1]);
        // the gap into a new region is still the old step; it widens after
        let boundary = chain[i + 1].exponent() != chain[i].exponent();
        if boundary {
            ensure!(right.checked_div(&left).unwrap() == q("16"), "ratio at {}", chain[i + 1]);
        } else {
            ensure!(left == right, "uneven spacing at {}", chain[i + 1]);
        }
    }
    let mut back = chain.last().unwrap().clone();
    for x in chain.iter().rev().skip(1) {
        back = pred(&back).map_err(|e| e.to_string())?.next;
        ensure!(&back == x, "pred replay diverged at {x}");
    }
    Ok(())
}

fn scale_transform() -> Check {
    let p = params(2, 2);
    let w = Window::new(-1, 1, SignSelection::Positive);
    for pt in window_enum(p, 1, &w).map_err(|e| e.to_string())? {
        let up = scale(&pt, 1).map_err(|e| e.to_string())?;
        ensure!(
            value_of(&up.coords()[0]) == value_of(&pt.coords()[0]) * q("16"),
            "{pt} did not grow by 16"
        );
    }
    let origin = LatticePoint::origin(p, 3);
    ensure!(scale(&origin, 1).unwrap() == origin, "origin moved");
    let sample = Window::new(-3, 3, SignSelection::Both).with_singular(true);
    for pt in window_enum(p, 1, &sample).map_err(|e| e.to_string())? {
        let there_and_back = scale(&scale(&pt, 1).unwrap(), -1).unwrap();
        ensure!(there_and_back == pt, "{pt} not restored");
    }
    Ok(())
}

fn singularity_census() -> Check {
    let p = params(2, 1);
    let w = Window::new(0, 0, SignSelection::Both).with_singular(true);
    let nonzero = window_enum(p, 1, &Window::new(0, 0, SignSelection::Both)).unwrap().len();
    let points = window_enum(p, 3, &w).map_err(|e| e.to_string())?;
    let mut census: BTreeMap<usize, usize> = BTreeMap::new();
    for pt in &points {
        *census.entry(classify(pt).degree).or_default() += 1;
        for dim in 0..3 {
            let none = neighbors(pt, dim).map_err(|e| e.to_string())? == Neighbors::NoNearestNeighbor;
            ensure!(none == pt.coords()[dim].is_zero(), "{pt} dim {dim}");
        }
    }
    let pp = nonzero;
    let expected = BTreeMap::from([(0, pp * pp * pp), (1, 3 * pp * pp), (2, 3 * pp), (3, 1)]);
    ensure!(census == expected, "p={pp}: census {census:?}");
    Ok(())
}

fn coarse_grain_example() -> Check {
    let o = Outcome::parse("11.011", 2).map_err(|e| e.to_string())?;
    let bin = bin_of(&o, &CoarseGrainRule::symmetric(pow(2, -4)).unwrap());
    ensure!(to_kary(&bin.lo, 2).as_deref() == Some("11.0101"), "lo {}", bin.lo);
    ensure!(to_kary(&bin.hi, 2).as_deref() == Some("11.0111"), "hi {}", bin.hi);
    ensure!(bin.lo == q("53/16") && bin.hi == q("55/16"), "bin {} .. {}", bin.lo, bin.hi);
    Ok(())
}

/// Positive points in `[a, b]` found by walking the successor chain.
fn walk(p: GridParams, a: &ExactRational, b: &ExactRational) -> Vec<ExactRational> {
    let mut x = rn_arith::round_to_grid(a, p.with_round(RoundMode::RoundUpAway));
    let mut out = Vec::new();
    while &value_of(&x) <= b {
        out.push(value_of(&x));
        x = succ(&x).unwrap().next;
    }
    out
}

fn limit_table() -> Check {
    let (a, b) = (q("1/2"), q("2"));
    let rows = convergence_table(2, 2..=12, &a, &b).map_err(|e| e.to_string())?;
    for row in &rows {
        let n = row.n as i64;
        let step = pow(2, -n);
        ensure!(row.low == step && row.step == step, "n={n}: low {} step {}", row.low, row.step);
        ensure!(row.high == pow(2, n) - step.clone(), "n={n}: high {}", row.high);
        ensure!(row.max_gap.as_ref() == Some(&step), "n={n}: max gap {:?}", row.max_gap);
        let p = params(2, row.n);
        let (lo, hi, st) = region_bounds(p, 0).unwrap();
        ensure!((lo, hi, st) == (row.low.clone(), row.high.clone(), row.step.clone()), "n={n}: bounds");
        if n <= 8 {
            let pts = walk(p, &a, &b);
            let gap = pts.windows(2).map(|w| &w[1] - &w[0]).max().unwrap();
            ensure!(gap == step, "n={n}: walked gap {gap}");
        }
        let jump = asymmetric_jump_demo(2, row.n).map_err(|e| e.to_string())?;
        ensure!(jump.location == ExactRational::one(), "n={n}: asymmetric jump at {}", jump.location);
        ensure!(jump.ratio == pow(2, n), "n={n}: asymmetric ratio {}", jump.ratio);
        let inside = symmetric_jumps_between(p, &pow(2, -n), &pow(2, n)).unwrap();
        ensure!(inside.is_empty(), "n={n}: symmetric jumps {inside:?}");
        if n <= 6 {
            let pts = walk(p, &(pow(2, -n) + pow(2, -2 * n)), &(pow(2, n) - pow(2, -2 * n)));
            let gaps: Vec<ExactRational> = pts.windows(2).map(|w| &w[1] - &w[0]).collect();
            ensure!(gaps.windows(2).all(|g| g[0] == g[1]), "n={n}: uneven symmetric spacing");
        }
    }
    Ok(())
}

fn non_associativity() -> Check {
    let p = params(2, 1);
    let xs = operands(p, -1, 1);
    let mut witnesses = 0;
    for a in &xs {
        for b in &xs {
            for c in &xs {
                let verdict = check_associative(a, b, c).map_err(|e| e.to_string())?;
                if sums_grid_exact(a, b, c) {
                    ensure!(verdict == Associativity::Holds, "exact triple {a}, {b}, {c} failed");
                }
                if matches!(verdict, Associativity::Witness { .. }) {
                    witnesses += 1;
                }
            }
        }
    }
    ensure!(witnesses > 0, "no witness");
    Ok(())
}

fn determinism() -> Check {
    let entries = manifest::entries();
    ensure!(!entries.is_empty(), "empty manifest");
    for entry in &entries {
        let first = manifest::run(entry);
        let second = manifest::run(entry);
        ensure!(first.code == 0, "{}: exit {} ({})", entry.name, first.code, first.stderr.trim());
        ensure!(first.stdout == second.stdout, "{}: outputs differ between runs", entry.name);
        let expected = manifest::expected(entry).ok_or_else(|| format!("{}: no expected output", entry.name))?;
        ensure!(first.stdout == expected, "{}: output differs from recorded", entry.name);
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("worked arithmetic examples", worked_arithmetic, Duration::from_secs(1)),
        ("normalization drift", normalization_drift, Duration::from_secs(1)),
        ("oracle equivalence", oracle_equivalence, Duration::from_secs(60)),
        ("ordering chain", ordering_chain, Duration::from_secs(1)),
        ("scale transform", scale_transform, Duration::from_secs(10)),
        ("singularity census", singularity_census, Duration::from_secs(10)),
        ("coarse-grain example", coarse_grain_example, Duration::from_secs(1)),
        ("limit table", limit_table, Duration::from_secs(10)),
        ("non-associativity", non_associativity, Duration::from_secs(10)),
        ("determinism", determinism, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut outcome = check();
        let took = t.elapsed();
        if outcome.is_ok() && took > *budget {
            outcome = Err(format!("took {took:.2?}, budget {budget:?}"));
        }
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
