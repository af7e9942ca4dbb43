use std::collections::BTreeMap;

use affq_core::ic::{
    hecke_dim_audit, hecke_inputs, integer_partitions, semismall_audit, strata, support_audit, sym_u_dims, StalkPolynomial,
    StalkTables, Stratum,
};
use affq_core::root_data::{enumerate_segments, DimVector, Flavor};
use proptest::prelude::*;

// ∏_θ 1/(1 − x^{wt θ} t²) truncated at β, by a graded prefix-sum DP.
fn graded_gf(n: usize, beta: &DimVector, flavor: Flavor) -> StalkPolynomial {
    let vectors = beta.below();
    let index: BTreeMap<DimVector, usize> = vectors.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let r_max = beta.total() as usize;
    let mut table = vec![vec![0u64; r_max + 1]; vectors.len()];
    table[0][0] = 1;
    for seg in enumerate_segments(n, beta, flavor).unwrap() {
        let w = seg.weight();
        for v in &vectors {
            if let Some(prev) = v.checked_sub(&w) {
                let (i, j) = (index[v], index[&prev]);
                for r in 1..=r_max {
                    table[i][r] += table[j][r - 1];
                }
            }
        }
    }
    StalkPolynomial::from_coeffs(table[index[beta]].clone())
}

// Multisets of generators (d, k) listed explicitly.
fn sym_u_oracle(n: usize, d: u32, flavor: Flavor) -> StalkPolynomial {
    let k_min = if flavor == Flavor::Gl { 1 } else { 2 };
    let gens: Vec<(u32, u32)> = (1..=d).flat_map(|dd| (k_min..=n as u32).map(move |k| (dd, k))).collect();
    fn rec(gens: &[(u32, u32)], idx: usize, rest: u32, r: u32, out: &mut Vec<u64>) {
        if rest == 0 {
            if out.len() <= r as usize {
                out.resize(r as usize + 1, 0);
            }
            out[r as usize] += 1;
            return;
        }
        if idx == gens.len() {
            return;
        }
        let (dd, k) = gens[idx];
        let mut m = 0;
        while m * dd <= rest {
            rec(gens, idx + 1, rest - m * dd, r + m * k, out);
            m += 1;
        }
    }
    let mut out = Vec::new();
    rec(&gens, 0, d, 0, &mut out);
    StalkPolynomial::from_coeffs(out)
}

fn dv(s: &str) -> DimVector {
    s.parse().unwrap()
}

#[test]
fn graded_dimensions_match_generating_functions() {
    for n in [2usize, 3, 4] {
        let mut t = StalkTables::new(n).unwrap();
        for beta in DimVector::all_up_to(n, 5).unwrap() {
            assert_eq!(t.sym_nplus(&beta).unwrap(), graded_gf(n, &beta, Flavor::Sl), "n={n} {beta}");
            assert_eq!(t.hall_graded(&beta).unwrap(), graded_gf(n, &beta, Flavor::Gl), "n={n} {beta}");
        }
        for d in 0..=6 {
            for flavor in [Flavor::Gl, Flavor::Sl] {
                assert_eq!(sym_u_dims(n, d, flavor), sym_u_oracle(n, d, flavor));
            }
        }
    }
}

#[test]
fn worked_identities() {
    let mut t = StalkTables::new(2).unwrap();
    assert_eq!(t.hall_graded(&dv("1,1")).unwrap().to_string(), "2*t^2 + t^4");
    assert_eq!(t.sym_u(2, Flavor::Gl).to_string(), "t^2 + 2*t^4 + t^6 + t^8");
    assert_eq!(t.colored_placements(&dv("1,1")).unwrap().to_string(), "2*t^2 + t^4");
    assert_eq!(t.punctual_placements(2).to_string(), "t^2 + 2*t^4 + t^6 + t^8");
}

#[test]
fn decomposition_holds_pointwise_and_per_stratum() {
    for n in [2usize, 3, 4] {
        let mut t = StalkTables::new(n).unwrap();
        for w in 0..=5 {
            let s = Stratum::new(DimVector::zero(n).unwrap(), vec![], vec![(w, 1)]);
            if w == 0 {
                assert!(s.is_err());
                continue;
            }
            assert!(t.decomposition_check(&s.unwrap().generic_configuration()).unwrap(), "n={n} w={w}");
        }
        for beta in DimVector::all_up_to(n, 5).unwrap() {
            if beta.is_zero() {
                continue;
            }
            let s = Stratum::new(DimVector::zero(n).unwrap(), vec![(beta.clone(), 1)], vec![]).unwrap();
            assert!(t.decomposition_check(&s.generic_configuration()).unwrap(), "n={n} beta={beta}");
        }
    }
    // multi-point strata
    let mut t = StalkTables::new(2).unwrap();
    for s in strata(&dv("3,2")).unwrap() {
        assert!(t.decomposition_check(&s.generic_configuration()).unwrap(), "{s}");
    }
}

#[test]
fn k_one_column_factors_out_of_sym_u() {
    for n in [2usize, 3, 4] {
        for d in 0..=6u32 {
            let mut rhs = StalkPolynomial::zero();
            for m in 0..=d {
                for q in integer_partitions(m) {
                    rhs = rhs.plus(&sym_u_dims(n, d - m, Flavor::Sl).shifted(q.len()));
                }
            }
            assert_eq!(sym_u_dims(n, d, Flavor::Gl), rhs);
        }
    }
}

#[test]
fn support_condition_and_summands() {
    for n in [2usize, 3] {
        let mut t = StalkTables::new(n).unwrap();
        for alpha in DimVector::all_up_to(n, 6).unwrap() {
            for e in support_audit(&mut t, &alpha, 8).unwrap() {
                assert!(e.ok, "n={n} {}: ic={} push={} degree={} codim={}", e.stratum, e.ic, e.push, e.degree, e.codim);
            }
        }
    }
}

#[test]
fn semismall_small_range() {
    for n in [2usize, 3] {
        for alpha in DimVector::all_up_to(n, 5).unwrap() {
            let r = semismall_audit(&alpha, 8).unwrap();
            assert_eq!(r.violations(), 0);
            assert!(r.entries.iter().all(|e| e.relevant == e.stratum.colored().is_empty()));
            assert!(r.entries.iter().any(|e| e.stratum.is_open()));
        }
    }
}

#[test]
fn hecke_audit_small_range() {
    for n in [2usize, 3] {
        for alpha in DimVector::all_up_to(n, 1).unwrap() {
            for gamma in DimVector::all_up_to(n, 2).unwrap() {
                for pts in hecke_inputs(&alpha, &gamma).unwrap() {
                    let r = hecke_dim_audit(&alpha, &gamma, &pts).unwrap();
                    assert!(r.ok(), "{alpha} {gamma} {pts:?}");
                }
            }
        }
    }
}

fn stratum_strategy() -> impl Strategy<Value = Stratum> {
    (
        2usize..4,
        proptest::collection::vec(0u32..2, 3),
        proptest::collection::vec((proptest::collection::vec(0u32..2, 3), 1u32..3), 0..3),
        proptest::collection::vec((1u32..3, 1u32..3), 0..3),
    )
        .prop_filter_map("nonzero colored weights", |(n, g, colored, punctual)| {
            let gamma = DimVector::new(g[..n].to_vec()).unwrap();
            let colored: Vec<_> = colored.into_iter().map(|(b, m)| (DimVector::new(b[..n].to_vec()).unwrap(), m)).collect();
            if colored.iter().any(|(b, _)| b.is_zero()) {
                return None;
            }
            Stratum::new(gamma, colored, punctual).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ic_stalk_factorizes_over_points(s in stratum_strategy()) {
        let mut t = StalkTables::new(s.rank()).unwrap();
        let whole = t.ic_stalk(&s).unwrap();
        let zero = DimVector::zero(s.rank()).unwrap();
        let mut product = StalkPolynomial::one();
        for (b, m) in s.colored() {
            for _ in 0..*m {
                let single = Stratum::new(zero.clone(), vec![(b.clone(), 1)], vec![]).unwrap();
                product = product.convolve(&t.ic_stalk(&single).unwrap());
            }
        }
        for (d, k) in s.punctual() {
            for _ in 0..*k {
                let single = Stratum::new(zero.clone(), vec![], vec![(*d, 1)]).unwrap();
                product = product.convolve(&t.ic_stalk(&single).unwrap());
            }
        }
        prop_assert_eq!(whole, product);
    }

    #[test]
    fn stratum_bookkeeping(s in stratum_strategy()) {
        prop_assert_eq!(s.codim() + s.dim(), 2 * s.alpha().total());
        prop_assert_eq!(s.codim() - 2 * s.max_fiber(), s.colored_points());
        let mut t = StalkTables::new(s.rank()).unwrap();
        prop_assert!(t.decomposition_check(&s.generic_configuration()).unwrap());
        if s.alpha().total() <= 6 {
            prop_assert!(strata(&s.alpha()).unwrap().contains(&s));
        }
    }
}
