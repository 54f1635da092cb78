//! Acceptance checks, one line per criterion. Runs as a plain binary
//! (`harness = false`) so the report is always printed:
//!
//!     cargo test -p uga-core --test acceptance

use std::process::ExitCode;
use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uga_core::baer::{
    algebra_center, enumerate_idempotents, group_baer_pipeline, group_wedderburn, is_baer, maschke_predict,
    nilpotent_ideal_bruteforce, KaplanskyType, StructureAlgebra,
};
use uga_core::group_algebra::{center_class_sums, orthonormality_test};
use uga_core::groups::{
    build_finite_group, conjugacy_classes, icc_check, FamilyKind, FiniteGroup, Group, GroupSpec, IccVerdict,
    InfiniteGroup,
};
use uga_core::linalg::Subspace;
use uga_core::operators::{
    builtin_scenario, check_relations, commutant, matrix_of, profile_space, regular_representation, Action,
    ConvergenceVerdict, Side,
};
use uga_core::scalars::{FqElement, Ring};
use uga_core::{FqField, GroupAlgebraElement, PadicField, PadicScalar, Rationals};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(spec: GroupSpec) -> Arc<FiniteGroup> {
    Arc::new(build_finite_group(&spec).expect("valid spec"))
}

fn test_groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    vec![
        ("C_4", group(GroupSpec::Cyclic { n: 4 })),
        ("S_3", group(GroupSpec::Symmetric { n: 3 })),
        ("D_4", group(GroupSpec::Dihedral { n: 4 })),
    ]
}

fn relations() -> Outcome {
    let mut total = 0;
    for (name, g) in test_groups() {
        let n = g.order();
        for report in [
            check_relations(&g, &Rationals::new()).map_err(|e| e.to_string())?,
            check_relations(&g, &FqField::prime(7).unwrap()).map_err(|e| e.to_string())?,
        ] {
            ensure(report.holds, || format!("{name}: {:?}", report.first_violation))?;
            ensure(report.checked == 1 + n + 3 * n * n, || {
                format!("{name}: only {} identities checked", report.checked)
            })?;
            total += report.checked;
        }
    }
    Ok(format!("{total} identities over Q and F_7"))
}

fn commutant_is_diagonal_constant() -> Outcome {
    let q = Rationals::new();
    let mut dims = Vec::new();
    for (name, g) in test_groups() {
        let n = g.order();
        let us: Vec<_> = (0..n)
            .map(|x| regular_representation(&g, &q, x, Action::Right).unwrap())
            .collect();
        let c = commutant(&g, &q, &us).map_err(|e| e.to_string())?;
        ensure(c.dim() == n, || format!("{name}: commutant has dimension {}", c.dim()))?;
        // diagonal-constant matrices alpha_{a,b} = eta_{a b^-1}
        let diag = Subspace::span(
            &q,
            n * n,
            (0..n).map(|g0| {
                (0..n)
                    .flat_map(|a| (0..n).map(move |b| (a, b)))
                    .map(|(a, b)| {
                        if g.op(a, g.inverse_of(b)) == g0 {
                            q.one()
                        } else {
                            q.zero()
                        }
                    })
                    .collect()
            }),
        );
        ensure(*c.space() == diag, || {
            format!("{name}: commutant is not the diagonal-constant space")
        })?;
        ensure(diag == profile_space(&g, &q, Side::RightCommutant), || {
            format!("{name}: right profile space differs")
        })?;

        let cc = commutant(&g, &q, &c.basis()).map_err(|e| e.to_string())?;
        ensure(cc.dim() == n, || {
            format!("{name}: double commutant has dimension {}", cc.dim())
        })?;
        ensure(us.iter().all(|u| cc.contains(u)), || {
            format!("{name}: U_g not in the double commutant")
        })?;
        ensure(*cc.space() == profile_space(&g, &q, Side::LeftCommutant), || {
            format!("{name}: double commutant is not the left profile space")
        })?;
        dims.push(format!("{name}: {n}/{n}"));
    }
    Ok(format!("commutant/double commutant dims {}", dims.join(", ")))
}

fn random_fq(g: &Arc<FiniteGroup>, f: &FqField, rng: &mut ChaCha8Rng) -> GroupAlgebraElement<FiniteGroup, FqField> {
    let q = f.order();
    GroupAlgebraElement::from_terms(g, f, g.elements().map(|x| (x, FqElement(rng.gen_range(0..q))))).unwrap()
}

/// Unit-ball element: p-adic integers with random valuation and unit part.
fn random_unit_ball(
    g: &Arc<FiniteGroup>,
    f: &PadicField,
    rng: &mut ChaCha8Rng,
) -> GroupAlgebraElement<FiniteGroup, PadicField> {
    let terms = g.elements().filter_map(|x| {
        if rng.gen_bool(0.2) {
            return None;
        }
        let mut den: i64 = rng.gen_range(1..200);
        while den % 5 == 0 {
            den += 1;
        }
        let c = f.rational(rng.gen_range(-500..500), den).unwrap();
        let c = f.mul(&c, &f.prime_power(rng.gen_range(0..3)));
        Some((x, c))
    });
    GroupAlgebraElement::from_terms(g, f, terms.collect::<Vec<_>>()).unwrap()
}

fn homomorphism() -> Outcome {
    let s3 = group(GroupSpec::Symmetric { n: 3 });
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let f7 = FqField::prime(7).unwrap();
    for i in 0..300 {
        let (x, y) = (random_fq(&s3, &f7, &mut rng), random_fq(&s3, &f7, &mut rng));
        let xy = x.convolve(&y).unwrap();
        for side in [Side::RightCommutant, Side::LeftCommutant] {
            let prod = matrix_of(&x, side).mul(&matrix_of(&y, side)).unwrap();
            ensure(matrix_of(&xy, side) == prod, || format!("F_7 pair {i}, {side:?}"))?;
        }
    }
    let q5 = PadicField::with_default_precision(5).unwrap();
    for i in 0..300 {
        let (x, y) = (
            random_unit_ball(&s3, &q5, &mut rng),
            random_unit_ball(&s3, &q5, &mut rng),
        );
        let xy = x.convolve(&y).unwrap();
        let prod = matrix_of(&x, Side::RightCommutant)
            .mul(&matrix_of(&y, Side::RightCommutant))
            .unwrap();
        ensure(matrix_of(&xy, Side::RightCommutant) == prod, || format!("Q_5 pair {i}"))?;
    }
    for i in 0..500 {
        let (x, y) = (
            random_unit_ball(&s3, &q5, &mut rng),
            random_unit_ball(&s3, &q5, &mut rng),
        );
        let lhs = x.convolve(&y).unwrap().reduce().map_err(|e| e.to_string())?;
        let rhs = x.reduce().unwrap().convolve(&y.reduce().unwrap()).unwrap();
        ensure(lhs == rhs, || format!("reduction pair {i}"))?;
    }
    Ok("300 F_7[S_3] pairs, 300 Q_5[S_3] pairs, 500 reduction pairs".into())
}

fn pow5(e: i64) -> BigRational {
    BigRational::from_integer(5.into()).pow(e as i32)
}

fn convergence() -> Outcome {
    let mut lines = Vec::new();
    for (name, converges) in [
        ("scalar-decay", true),
        ("column-shift", true),
        ("unbounded-growth", false),
    ] {
        let s = builtin_scenario(name, 20).map_err(|e| e.to_string())?;
        let r = s.run().map_err(|e| e.to_string())?;
        let accepted = r.verdict == ConvergenceVerdict::ConvergesEvidence;
        ensure(accepted == converges, || format!("{name}: verdict {:?}", r.verdict))?;
        ensure(r.probes_agree, || format!("{name}: probes disagree with the verdict"))?;
        if !converges {
            ensure(matches!(r.verdict, ConvergenceVerdict::FailsBound { .. }), || {
                format!("{name}: rejected by {:?}, expected the uniform bound", r.verdict)
            })?;
            // probe f_m = 5^{ceil(m/2)}; stage l maps it to 5^{-l} 5^{ceil(l/2)} e_0
            let q5 = &s.field;
            let mut max = (0usize, BigRational::from_integer(0.into()));
            for stage in s.stages.iter().filter(|st| st.index >= s.tail_index) {
                let l = stage.index as i64;
                let image = stage.entries().fold(q5.zero(), |acc, (&(_, m), v)| {
                    q5.add(&acc, &q5.mul(v, &q5.prime_power((m as i64 + 1) / 2)))
                });
                let expected = pow5(l - (l + 1) / 2);
                ensure(image.norm() == expected, || {
                    format!("stage {l}: image norm {}", image.norm())
                })?;
                if image.norm() > max.1 {
                    max = (stage.index, image.norm());
                }
            }
            let slow = r
                .probes
                .iter()
                .find(|p| p.probe == "half_valuation")
                .ok_or("no slow probe")?;
            ensure(
                !slow.passes && slow.max_tail_norm == max.1.to_string() && slow.max_stage == Some(max.0),
                || format!("slow probe {slow:?}, oracle {max:?}"),
            )?;
            lines.push(format!("{name} rejected (probe norm {} at stage {})", max.1, max.0));
        } else {
            lines.push(format!("{name} accepted"));
        }
    }
    Ok(lines.join("; "))
}

fn factor_criterion() -> Outcome {
    let d = InfiniteGroup::new(FamilyKind::InfiniteDihedral).unwrap();
    let r = d.parse_element("r").unwrap();
    let v = icc_check(&d, &[r], 1000).map_err(|e| e.to_string())?;
    ensure(matches!(&v[0], IccVerdict::FiniteClass { size: 2, .. }), || {
        format!("D_inf r: {:?}", v[0])
    })?;

    let f2 = InfiniteGroup::new(FamilyKind::Free { rank: 2 }).unwrap();
    let probes: Vec<_> = ["a", "b", "ab"].iter().map(|w| f2.parse_element(w).unwrap()).collect();
    let v = icc_check(&f2, &probes, 1000).map_err(|e| e.to_string())?;
    ensure(
        v.iter().all(|x| *x == IccVerdict::CertifiedAtLeast { cap: 1000 }),
        || format!("F_2: {v:?}"),
    )?;

    let z = InfiniteGroup::new(FamilyKind::FreeAbelian { rank: 1 }).unwrap();
    let v = icc_check(&z, &[z.parse_element("a^7").unwrap()], 1000).map_err(|e| e.to_string())?;
    ensure(matches!(&v[0], IccVerdict::FiniteClass { size: 1, .. }), || {
        format!("Z: {:?}", v[0])
    })?;

    for (spec, expected) in [(GroupSpec::Symmetric { n: 3 }, 3), (GroupSpec::Dihedral { n: 4 }, 5)] {
        let g = group(spec);
        let f = FqField::prime(5).unwrap();
        let classes = conjugacy_classes(&g).len();
        let center = algebra_center(&StructureAlgebra::from_group(&g, &f)).space.dim();
        let sums = center_class_sums(&g, &f);
        let a = StructureAlgebra::from_group(&g, &f);
        let central = sums
            .iter()
            .all(|z| a.is_central(&g.elements().map(|x| z.coeff(&x)).collect::<Vec<_>>()));
        ensure(classes == expected && center == expected && central, || {
            format!("{}: {classes} classes, center dimension {center}", g.name())
        })?;
    }
    Ok("D_inf r: class of size 2; F_2: AtLeast(1000); Z: class of size 1; center dims S_3 = 3, D_4 = 5".into())
}

fn pipeline() -> Outcome {
    let r = group_baer_pipeline(&GroupSpec::Symmetric { n: 3 }, 5, 1, 1 << 20).map_err(|e| e.to_string())?;
    ensure(r.semisimple, || "F_5[S_3] not semisimple".into())?;
    let w = r.wedderburn.as_ref().ok_or("no Wedderburn report")?;
    ensure(w.components == [(1, 1), (1, 1), (2, 1)], || {
        format!("components {:?}", w.components)
    })?;
    let total: usize = w.components.iter().map(|&(n, d)| n * n * d).sum();
    ensure(total == 6, || format!("blocks cover {total}"))?;
    ensure(r.is_baer, || "F_5[S_3] not Baer".into())?;
    ensure(
        r.kaplansky_type == Some(KaplanskyType::I) && r.dedekind_finite == Some(true),
        || format!("type {:?}, finite {:?}", r.kaplansky_type, r.dedekind_finite),
    )?;

    // certificate: idempotent, eAe commutative, and faithful (AeA = A)
    let s3 = group(GroupSpec::Symmetric { n: 3 });
    let a = StructureAlgebra::from_group(&s3, &FqField::prime(5).unwrap());
    let e = r.certificate_coordinates.clone().ok_or("no certificate")?;
    ensure(a.mul(&e, &e) == e, || "certificate is not idempotent".into())?;
    let corner: Vec<_> = (0..6).map(|i| a.mul(&a.mul(&e, &a.basis_vector(i)), &e)).collect();
    ensure(corner.iter().all(|x| corner.iter().all(|y| a.commutes(x, y))), || {
        "corner not commutative".into()
    })?;
    ensure(a.two_sided_ideal(&a.span([e.clone()])).dim() == 6, || {
        "certificate not faithful".into()
    })?;

    let f2c3 = group_wedderburn(
        &build_finite_group(&GroupSpec::Cyclic { n: 3 }).unwrap(),
        &FqField::prime(2).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    ensure(f2c3.components == [(1, 1), (1, 2)], || {
        format!("F_2[C_3] components {:?}", f2c3.components)
    })?;
    Ok(format!(
        "F_5[S_3] type I finite, certificate {}; F_2[C_3] blocks {:?}",
        r.certificate.unwrap(),
        f2c3.components
    ))
}

fn negative_control() -> Outcome {
    let c3 = group(GroupSpec::Cyclic { n: 3 });
    let f3 = FqField::prime(3).unwrap();
    let a = StructureAlgebra::from_group(&c3, &f3);
    let rad = nilpotent_ideal_bruteforce(&a, 1 << 20)
        .map_err(|e| e.to_string())?
        .ok_or("semisimple")?;
    ensure(rad.ideal.dim() == 2 && rad.index == 3, || {
        format!("radical dim {}, index {}", rad.ideal.dim(), rad.index)
    })?;

    let baer = is_baer(&a, 1 << 20).map_err(|e| e.to_string())?;
    ensure(!baer.is_baer, || "F_3[C_3] reported Baer".into())?;
    // t - 1 and (t - 1)^2 in coordinates (1, t, t^2)
    let t = c3.elements().find(|&x| x != 0).unwrap();
    let delta = |x: usize| GroupAlgebraElement::delta(&c3, &f3, x);
    let u = delta(t).sub(&delta(0)).unwrap();
    let u2 = u.convolve(&u).unwrap();
    let coords = |x: &GroupAlgebraElement<FiniteGroup, FqField>| (0..3).map(|i| x.coeff(&i)).collect::<Vec<_>>();
    let expected = a.span([coords(&u), coords(&u2)]);
    let witness = a.span(baer.witness.clone().ok_or("no witness")?);
    ensure(witness == expected, || format!("witness {:?}", witness.basis()))?;

    // brute-force idempotent scan over all 27 elements, by convolution
    let mut idems = Vec::new();
    for c0 in 0..3 {
        for c1 in 0..3 {
            for c2 in 0..3 {
                let x = GroupAlgebraElement::from_terms(
                    &c3,
                    &f3,
                    [(0, FqElement(c0)), (1, FqElement(c1)), (2, FqElement(c2))],
                )
                .unwrap();
                if x.convolve(&x).unwrap() == x {
                    idems.push(coords(&x));
                }
            }
        }
    }
    ensure(idems == [a.zero(), a.one()], || format!("idempotents {idems:?}"))?;
    let listed: Vec<_> = enumerate_idempotents(&a, 1 << 20)
        .unwrap()
        .into_iter()
        .map(|i| i.element)
        .collect();
    ensure(listed == idems, || format!("enumerate_idempotents gave {listed:?}"))?;
    ensure(idempotent_free(&a, &witness), || {
        "witness generated by an idempotent".into()
    })?;
    Ok("radical dim 2, index 3; witness span{t-1, (t-1)^2}; idempotents {0, 1}".into())
}

fn idempotent_free(a: &StructureAlgebra, l: &Subspace<FqField>) -> bool {
    // L = A e would need e in L with e^2 = e; only 0 lies in L, and A 0 = 0 != L
    a.subspace_elements(l)
        .filter(|e| a.mul(e, e) == *e)
        .all(|e| a.span((0..a.dim()).map(|i| a.mul(&a.basis_vector(i), &e))) != *l)
}

fn orthonormality() -> Outcome {
    let s3 = group(GroupSpec::Symmetric { n: 3 });
    let q5 = PadicField::with_default_precision(5).unwrap();
    let delta = |x: usize| GroupAlgebraElement::delta(&s3, &q5, x);
    let five: PadicScalar = q5.integer(5);
    let g = 1;

    let basis: Vec<_> = s3.elements().map(delta).collect();
    let r = orthonormality_test(&basis).map_err(|e| e.to_string())?;
    ensure(r.orthonormal && r.reduction_rank == 6, || format!("basis: {r:?}"))?;

    let perturbed = [delta(0).add(&delta(g).scale(&five)).unwrap(), delta(g)];
    let r = orthonormality_test(&perturbed).map_err(|e| e.to_string())?;
    ensure(r.orthonormal && r.reduction_rank == 2, || format!("perturbed: {r:?}"))?;

    let dependent = [delta(0), delta(0).add(&delta(g).scale(&five)).unwrap()];
    let r = orthonormality_test(&dependent).map_err(|e| e.to_string())?;
    ensure(!r.orthonormal && r.reduction_rank == 1, || format!("dependent: {r:?}"))?;
    Ok("standard basis rank 6; perturbed rank 2; dependent rank 1".into())
}

fn small_groups() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let c = |n| Cyclic { n };
    let mut out = vec![Trivial];
    out.extend((2..=8).map(c));
    out.push(DirectProduct {
        factors: vec![c(2), c(2)],
    });
    out.push(Symmetric { n: 3 });
    out.push(Dihedral { n: 4 });
    out.push(Quaternion);
    out.push(DirectProduct {
        factors: vec![c(4), c(2)],
    });
    out.push(DirectProduct {
        factors: vec![c(2), c(2), c(2)],
    });
    out
}

fn maschke() -> Outcome {
    let mut count = 0;
    for spec in small_groups() {
        let g = build_finite_group(&spec).unwrap();
        for p in [2, 3] {
            let a = StructureAlgebra::from_group(&g, &FqField::prime(p).unwrap());
            let nil = nilpotent_ideal_bruteforce(&a, 1 << 20).map_err(|e| e.to_string())?;
            ensure(maschke_predict(&g, p) == nil.is_none(), || {
                format!("{} over F_{p}", g.name())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (group, prime) pairs, all groups of order <= 8"))
}

fn main() -> ExitCode {
    type Check = (&'static str, fn() -> Outcome);
    let criteria: [Check; 9] = [
        ("relations", relations),
        ("commutant equals diagonal-constant matrices", commutant_is_diagonal_constant),
        ("matrix_of and reduction are multiplicative", homomorphism),
        ("strong convergence scenarios", convergence),
        ("factor criterion", factor_criterion),
        ("F_5[S_3] pipeline and F_2[C_3] blocks", pipeline),
        ("F_3[C_3] negative control", negative_control),
        ("orthonormality examples", orthonormality),
        ("Maschke agreement", maschke),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
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
