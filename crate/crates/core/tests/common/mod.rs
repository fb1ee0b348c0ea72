#![allow(dead_code)]

use betaexp::{BaseSpec, Bound, QElement};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub const GOLDEN: &str = "root(1,-1,-1;1.5,1.7)";
pub const TRIBONACCI: &str = "root(1,-1,-1,-1;1.8,1.9)";
pub const BASES: [&str; 6] = ["3/2", "5/3", "7/4", "2", GOLDEN, TRIBONACCI];

pub fn base(text: &str) -> BaseSpec {
    BaseSpec::parse(text).unwrap()
}

pub fn digits(ds: &[BigUint]) -> Vec<u64> {
    ds.iter().map(|d| d.to_u64().unwrap()).collect()
}

/// `x = k/8 * M/(q-1)` for `k = 1..8`, then `x = 1` when it is in range.
pub fn grid_points(q: &BaseSpec, m: u64) -> Vec<(String, QElement)> {
    let top = q
        .integer(m)
        .checked_div(&q.q().sub_integer(&1.into()))
        .unwrap();
    let mut out: Vec<(String, QElement)> = (1..=8u64)
        .map(|k| {
            let c = num_rational::BigRational::new(k.into(), 8u64.into());
            (format!("{k}/8*M/(q-1)"), top.scale(&c))
        })
        .collect();
    if q.one().cmp_value(&top).is_le() {
        out.push(("1".into(), q.one()));
    }
    out
}

/// Every `(q, M, x)` of the oracle grid.
pub fn grid() -> Vec<(String, BaseSpec, Bound, String, QElement)> {
    let mut out = Vec::new();
    for text in BASES {
        let q = base(text);
        for m in 1..=3u64 {
            for (label, x) in grid_points(&q, m) {
                out.push((text.to_string(), q.clone(), Bound::finite(m), label, x));
            }
        }
    }
    out
}
