//! Dedekind sums `s(q, p) = Σ_{i=1}^{p-1} ((i/p)) ((iq/p))` by three
//! independent routes: the definition, the reciprocity recursion, and the
//! negative-regular continued fraction of `p/q`.

use super::ncf::ncf_summary;
use super::prime::Residue;
use super::{rat, ExactRational};

/// Direct O(p) evaluation of the definition. Uses
/// `((i/p)) = (2i - p) / 2p` for `0 < i < p`.
pub fn dedekind_brute(r: Residue) -> ExactRational {
    let p = r.p() as i128;
    let q = r.q() as i128;
    let mut total: i128 = 0;
    for i in 1..p {
        let ri = (i * q) % p;
        total += (2 * i - p) * (2 * ri - p);
    }
    rat(total, 4 * p * p)
}

/// `s(h, k)` for coprime `h`, `k > 0`, via
/// `s(h,k) + s(k,h) = (h² + k² + 1)/(12hk) - 1/4` and Euclid.
pub fn dedekind_sum(h: u64, k: u64) -> ExactRational {
    debug_assert!(k > 0 && num_integer::gcd(h, k) == 1);
    let mut acc = rat(0, 1);
    let mut negate = false;
    let (mut h, mut k) = ((h % k) as i128, k as i128);
    while h != 0 {
        let step = rat(h * h + k * k + 1, 12 * h * k) - rat(1, 4);
        if negate {
            acc -= step;
        } else {
            acc += step;
        }
        negate = !negate;
        (h, k) = (k % h, h);
    }
    acc
}

pub fn dedekind_fast(r: Residue) -> ExactRational {
    dedekind_sum(r.q(), r.p())
}

/// `s(q, p) = ((q + q')/p + Σ (e_i - 3)) / 12`.
pub fn dedekind_from_ncf(r: Residue) -> ExactRational {
    let summary = ncf_summary(r);
    let p = r.p() as i128;
    let qq = (r.q() + r.inverse().q()) as i128;
    let excess = summary.sum as i128 - 3 * summary.length as i128;
    rat(qq + excess * p, 12 * p)
}

/// `S(a, b; p) = Σ_{i=1}^{p-1} [ai/p] [bi/p]`.
pub fn floor_product_sum(a: u64, b: u64, p: u64) -> i128 {
    let (a, b, p) = (a as i128, b as i128, p as i128);
    (1..p).map(|i| (a * i / p) * (b * i / p)).sum()
}

/// `Σ_{i=1}^{p-1} i [ai/p]`.
pub fn weighted_floor_sum(a: u64, p: u64) -> i128 {
    let (a, p) = (a as i128, p as i128);
    (1..p).map(|i| i * (a * i / p)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numth::PrimeModulus;

    fn res(q: u64, p: u64) -> Residue {
        PrimeModulus::new(p).unwrap().residue(q).unwrap()
    }

    #[test]
    fn brute_examples() {
        assert_eq!(dedekind_brute(res(1, 5)), rat(1, 5));
        assert_eq!(dedekind_brute(res(2, 5)), rat(0, 1));
        assert_eq!(dedekind_brute(res(5, 7)), rat(-1, 14));
        assert_eq!(dedekind_brute(res(2, 7)), rat(1, 14));
    }

    #[test]
    fn fast_examples() {
        let p = 61_169i128;
        assert_eq!(
            dedekind_fast(res(1, 61_169)),
            rat((p - 1) * (p - 2), 12 * p)
        );
        assert_eq!(dedekind_fast(res(2, 7)), rat(1, 14));
        assert_eq!(
            dedekind_fast(res(60_000, 61_169)),
            dedekind_brute(res(60_000, 61_169))
        );
    }

    #[test]
    fn ncf_route_examples() {
        assert_eq!(dedekind_from_ncf(res(5, 7)), rat(-1, 14));
        assert_eq!(dedekind_from_ncf(res(1, 5)), rat(1, 5));
    }

    #[test]
    fn s_of_one() {
        for p in [3u64, 5, 7, 101, 1009] {
            let pi = p as i128;
            assert_eq!(dedekind_brute(res(1, p)), rat((pi - 1) * (pi - 2), 12 * pi));
        }
    }

    #[test]
    fn weighted_floor_sum_identity() {
        // Σ i [ai/p] = (a² - 1)(p - 1)(2p - 1)/(12a) + p S(a,a;p)/(2a)
        for p in [5u64, 7, 11, 13, 97] {
            for a in 1..p {
                let (ai, pi) = (a as i128, p as i128);
                let lhs = rat(weighted_floor_sum(a, p), 1);
                let rhs = rat((ai * ai - 1) * (pi - 1) * (2 * pi - 1), 12 * ai)
                    + rat(pi * floor_product_sum(a, a, p), 2 * ai);
                assert_eq!(lhs, rhs, "a = {a}, p = {p}");
            }
        }
    }

    #[test]
    fn dedekind_from_diagonal_floor_sum() {
        // s(a,p) = (p-1)(2pa² - a² - 3ap + 2p - 1)/(12ap) - S(a,a;p)/(2a)
        for p in [5u64, 7, 11, 53] {
            for a in 1..p {
                let (ai, pi) = (a as i128, p as i128);
                let rhs = rat(
                    (pi - 1) * (2 * pi * ai * ai - ai * ai - 3 * ai * pi + 2 * pi - 1),
                    12 * ai * pi,
                ) - rat(floor_product_sum(a, a, p), 2 * ai);
                assert_eq!(dedekind_brute(res(a, p)), rhs);
            }
        }
    }

    #[test]
    fn mixed_floor_sum_identity() {
        // S(a,b;p) = s(a'b,p) - a s(b,p) - b s(a,p) + (p-1)(3p - 3pa - 3pb + 2ab(2p-1))/(12p)
        for p in [5u64, 7, 13, 31] {
            let m = PrimeModulus::new(p).unwrap();
            for a in m.residues() {
                for b in m.residues() {
                    let (ai, bi, pi) = (a.q() as i128, b.q() as i128, p as i128);
                    let ab = m.residue(a.inverse().q() * b.q() % p).unwrap();
                    let rhs = dedekind_fast(ab)
                        - rat(ai, 1) * dedekind_fast(b)
                        - rat(bi, 1) * dedekind_fast(a)
                        + rat(
                            (pi - 1)
                                * (3 * pi - 3 * pi * ai - 3 * pi * bi + 2 * ai * bi * (2 * pi - 1)),
                            12 * pi,
                        );
                    assert_eq!(rat(floor_product_sum(a.q(), b.q(), p), 1), rhs);
                }
            }
        }
    }

    #[test]
    fn three_term_combination() {
        // -(a/b) S(b,b) - (b/a) S(a,a) + 2 S(a,b)
        //   = (1-p)(a²(2p-1) + b²(2p-1) - 3abp)/(6abp) + 2 s(a'b, p)
        for p in [5u64, 7, 13, 29] {
            let m = PrimeModulus::new(p).unwrap();
            for a in m.residues() {
                for b in m.residues() {
                    let (ai, bi, pi) = (a.q() as i128, b.q() as i128, p as i128);
                    let lhs = -rat(ai * floor_product_sum(b.q(), b.q(), p), bi)
                        - rat(bi * floor_product_sum(a.q(), a.q(), p), ai)
                        + rat(2 * floor_product_sum(a.q(), b.q(), p), 1);
                    let ab = m.residue(a.inverse().q() * b.q() % p).unwrap();
                    let rhs = rat(
                        (1 - pi)
                            * (ai * ai * (2 * pi - 1) + bi * bi * (2 * pi - 1) - 3 * ai * bi * pi),
                        6 * ai * bi * pi,
                    ) + rat(2, 1) * dedekind_fast(ab);
                    assert_eq!(lhs, rhs, "a = {ai}, b = {bi}, p = {p}");
                }
            }
        }
    }

    #[test]
    fn non_ordinary_witness() {
        // m | p + 1  =>  s((p+1)/m, p) = (p² + (m² - 6m + 2)p + m² + 1)/(12mp)
        for p in [17u64, 101, 1009, 61_169] {
            for m in 2..=12u64 {
                if (p + 1) % m != 0 || (p + 1) / m >= p {
                    continue;
                }
                let (mi, pi) = (m as i128, p as i128);
                let expected = rat(
                    pi * pi + (mi * mi - 6 * mi + 2) * pi + mi * mi + 1,
                    12 * mi * pi,
                );
                assert_eq!(
                    dedekind_fast(res((p + 1) / m, p)),
                    expected,
                    "p = {p}, m = {m}"
                );
            }
        }
    }
}
