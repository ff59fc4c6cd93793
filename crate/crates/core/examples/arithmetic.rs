//! Region and jump arithmetic on the k=2, n=2 symmetric grid.

use rn_arith::arithmetic::{add, check_associative, classify_op, mul, Associativity};
use rn_arith::{GridParams, RnNumber};

fn main() -> Result<(), rn_arith::Error> {
    let p = GridParams::symmetric(2, 2)?;
    let lit = |s: &str| RnNumber::parse(s, p);

    let cases = [
        ("00.10e2", '+', "00.10e1"),
        ("10.10e1", '+', "11.10e1"),
        ("11.10e2", '*', "10.01e1"),
        ("01.01e0", '+', "00.10e0"),
    ];
    for (a, op, b) in cases {
        let (a, b) = (lit(a)?, lit(b)?);
        let r = if op == '+' { add(&a, &b)? } else { mul(&a, &b)? };
        let kind = classify_op(&a, &b, &r).kind;
        println!("{a} {op} {b} = {r}   ({:?}, exact {})", kind, r.value());
    }

    // rounding in the first partial sum makes grouping matter
    let (a, b, c) = (lit("11.11e0")?, lit("00.10e0")?, lit("-00.10e0")?);
    if let Associativity::Witness { lhs, rhs } = check_associative(&a, &b, &c)? {
        println!("({a} + {b}) + {c} = {lhs}");
        println!("{a} + ({b} + {c}) = {rhs}");
    }
    Ok(())
}
