//! Corpus-wide structural invariants: validation, round-trips,
//! perturbation detection, formality consistency, and redundancy of the
//! emitted row families.

use gkm::cohomology::{betti_from_series, check_class, hilbert, solve_degree};
use gkm::constraints::{constraint_matrix, constraint_matrix_with, BuildOptions};
use gkm::corpus;
use gkm::model::{GkmSpace, Stratum};
use num::FromPrimitive;

#[test]
fn corpus_validates_and_round_trips() {
    for entry in corpus::ENTRIES {
        let space = corpus::space(entry.name);
        assert!(space.validate().is_valid(), "{}", entry.name);
        let text = space.serialize();
        assert_eq!(GkmSpace::parse(&text).unwrap(), space, "{}", entry.name);
    }
}

#[test]
fn any_single_multiplier_perturbation_is_caught() {
    let one = num::BigRational::from_i64(1).unwrap();
    for entry in corpus::ENTRIES {
        let space = corpus::space(entry.name);
        for (si, stratum) in space.strata.iter().enumerate() {
            let Stratum::Four(four) = stratum else { continue };
            for point in four.points.clone() {
                for slot in 0..2 {
                    let mut corrupted = space.clone();
                    let Stratum::Four(target) = &mut corrupted.strata[si] else {
                        unreachable!()
                    };
                    let pair = target.multipliers.get_mut(&point).unwrap();
                    if slot == 0 {
                        pair.0 += &one;
                    } else {
                        pair.1 += &one;
                    }
                    assert!(
                        !corrupted.validate().is_valid(),
                        "{}: perturbing {}[{}] slot {} went undetected",
                        entry.name,
                        point,
                        si,
                        slot
                    );
                }
            }
        }
    }
}

#[test]
fn basis_classes_are_nonzero_members() {
    for entry in corpus::ENTRIES {
        let space = corpus::space(entry.name);
        for k in 0..=3 {
            let basis = solve_degree(&space, k);
            for class in &basis.classes {
                assert!(!class.is_zero(), "{} degree {}", entry.name, k);
                assert!(check_class(&space, class).member);
            }
        }
    }
}

#[test]
fn component_wise_membership() {
    // a class satisfies the system degree by degree: each homogeneous
    // component of a sum of basis classes is itself a member, and
    // corrupting one component is detected at that degree alone
    let space = corpus::space("cp2_s1");
    let deg1 = solve_degree(&space, 1);
    let deg2 = solve_degree(&space, 2);
    for a in &deg1.classes {
        assert!(check_class(&space, a).member);
    }
    for b in &deg2.classes {
        assert!(check_class(&space, b).member);
    }
    // corrupt a degree-1 component: scale a nonzero point entry only
    let mut bad = deg1
        .classes
        .iter()
        .find(|c| !c.restriction("p2").is_zero())
        .expect("some basis class restricts nontrivially to p2")
        .clone();
    let poly = bad.values.get_mut("p2").unwrap();
    *poly = poly.scale(&num::BigRational::from_i64(3).unwrap());
    assert!(!check_class(&space, &bad).member);
    // the degree-2 component is untouched by the corruption
    assert!(check_class(&space, &deg2.classes[0]).member);
}

#[test]
fn formality_consistency_and_palindromic_betti() {
    for entry in corpus::ENTRIES {
        let space = corpus::space(entry.name);
        let data = hilbert(&space, 5);
        assert!(data.consistent, "{}", entry.name);
        assert_eq!(data.equivariant, entry.expected_hilbert, "{}", entry.name);
        let betti = data.betti_vector();
        assert_eq!(betti, entry.expected_betti, "{}", entry.name);
        let reversed: Vec<i64> = betti.iter().rev().copied().collect();
        assert_eq!(betti, reversed, "{}: Betti vector not palindromic", entry.name);
    }
}

#[test]
fn hilbert_matches_convolution_prediction() {
    // reconstruct h from q by dividing by (1 - t)^rank again; the two
    // series must agree on the whole computed prefix
    for entry in corpus::ENTRIES {
        let space = corpus::space(entry.name);
        let data = hilbert(&space, 5);
        let mut series: Vec<i64> = data.betti_candidates.clone();
        for _ in 0..space.torus.rank {
            for k in 1..series.len() {
                series[k] += series[k - 1];
            }
        }
        let h: Vec<i64> = data.equivariant.iter().map(|&v| v as i64).collect();
        assert_eq!(series, h, "{}", entry.name);
        // and the forward direction is the inverse operation
        assert_eq!(
            betti_from_series(&data.equivariant, space.torus.rank),
            data.betti_candidates
        );
    }
}

#[test]
fn redundant_rows_never_change_nullity() {
    // deduplicating identical rows cannot change the solution space
    for entry in corpus::ENTRIES {
        let space = corpus::space(entry.name);
        for k in 0..=4 {
            let system = constraint_matrix(&space, k);
            let full = system.matrix().nullspace_basis().len();
            let mut unique_rows: Vec<Vec<num::BigRational>> = Vec::new();
            for row in &system.rows {
                if !unique_rows.contains(&row.coeffs) {
                    unique_rows.push(row.coeffs.clone());
                }
            }
            let deduped = if unique_rows.is_empty() {
                system.layout.column_count()
            } else {
                gkm::exactalg::RationalMatrix::from_rows(unique_rows)
                    .nullspace_basis()
                    .len()
            };
            assert_eq!(full, deduped, "{} k={}", entry.name, k);
        }
    }
}

#[test]
fn spanning_pairs_match_all_pairs() {
    for entry in corpus::ENTRIES {
        let space = corpus::space(entry.name);
        for k in 0..=5 {
            let spanning = constraint_matrix(&space, k).matrix().nullspace_basis().len();
            let all = constraint_matrix_with(
                &space,
                k,
                BuildOptions { all_pairs: true, ..Default::default() },
            )
            .matrix()
            .nullspace_basis()
            .len();
            assert_eq!(spanning, all, "{} k={}", entry.name, k);
        }
    }
}
