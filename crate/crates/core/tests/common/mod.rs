#![allow(dead_code)]

use hamsym::{ExactMatrix, GaussRational, Monomial, Perm, PolyScalar};
use proptest::prelude::*;

pub const VARS: [&str; 3] = ["a", "b", "c"];

pub fn gauss() -> impl Strategy<Value = GaussRational> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(num, den, im)| {
        &GaussRational::from_frac(num, den) + &(&GaussRational::from_int(im) * &GaussRational::i())
    })
}

pub fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((0usize..3, 0u32..=2), 0..3)
        .prop_map(|fs| Monomial::from_factors(fs.into_iter().map(|(v, e)| (VARS[v], e))))
}

pub fn poly() -> impl Strategy<Value = PolyScalar> {
    prop::collection::vec((gauss(), monomial()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(PolyScalar::zero(), |acc, (c, m)| {
            acc + PolyScalar::term(c, m)
        })
    })
}

/// Entries drawn from a small palette so equal entries are common.
pub fn palette_entry() -> impl Strategy<Value = PolyScalar> {
    prop_oneof![
        Just(PolyScalar::zero()),
        Just(PolyScalar::one()),
        Just(PolyScalar::var("a")),
        Just(PolyScalar::var("b")),
        Just(PolyScalar::from_int(2) * PolyScalar::var("a")),
        Just(PolyScalar::i()),
    ]
}

pub fn matrix_with(
    rows: usize,
    cols: usize,
    entry: impl Strategy<Value = PolyScalar>,
) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(entry, rows * cols).prop_map(move |e| {
        ExactMatrix::from_rows(e.chunks(cols).map(<[_]>::to_vec).collect()).unwrap()
    })
}

pub fn square(n: usize) -> impl Strategy<Value = ExactMatrix> {
    matrix_with(n, n, palette_entry())
}

/// Square palette matrix symmetrized as `A + A^T`, which tends to have
/// more symmetries than an arbitrary one.
pub fn symmetric(n: usize) -> impl Strategy<Value = ExactMatrix> {
    square(n).prop_map(|a| a.add(&a.transpose()).unwrap())
}

pub fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::new(v).unwrap())
}

/// A random involution: a product of disjoint transpositions.
pub fn involution(n: usize) -> impl Strategy<Value = Perm> {
    (perm(n), 0..=n / 2).prop_map(move |(order, pairs)| {
        let mut image: Vec<usize> = (0..n).collect();
        for k in 0..pairs {
            let (x, y) = (order.apply(2 * k), order.apply(2 * k + 1));
            image[x] = y;
            image[y] = x;
        }
        Perm::new(image).unwrap()
    })
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    hamsym::search::for_each_permutation(n, |img| {
        out.push(Perm::new(img.to_vec()).unwrap());
        std::ops::ControlFlow::Continue(())
    });
    out
}
