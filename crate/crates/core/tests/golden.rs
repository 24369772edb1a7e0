mod common;

use filiform::family::{generate_general, GeneralLawParams};
use filiform::{LieAlgebra, Polynomial, Triple, Var};

fn dim15_law() -> LieAlgebra {
    let t = Triple::new(4, 9, 15).unwrap();
    let mut p = GeneralLawParams::zero(t).unwrap();
    for v in [Var::Alpha(6), Var::Gamma(5), Var::Beta(1, 5), Var::Beta(2, 4), Var::Beta(3, 3), Var::Beta(4, 2)] {
        p.set(&v, Polynomial::var(v.clone())).unwrap();
    }
    generate_general(&p).unwrap()
}

#[test]
fn dim15_table_entries() {
    let g = dim15_law();
    let mut bad = Vec::new();
    for &(i, j, h, text) in common::DIM15_TABLE {
        let expected: Polynomial = text.parse().unwrap();
        let v = g.bracket_basis(i, j).unwrap();
        let got = v.coord(h).unwrap();
        if *got != expected || v.support().count() != 1 {
            bad.push(format!("[e{i},e{j}]: table e{h} <{expected}>, generated {v}"));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
