//! Golden-fixture check suite: reference inputs with known-correct outputs,
//! runnable both from tests and from the command line.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::delta_ops::{
    c_op, delta_op, straighten, ChernBasisPoly, ChernMono, Partition, SchurBasisPoly,
    Straightened, VarGroup,
};
use crate::evaluator::{
    compute, compute_vertex_form, gtp_oracle, gtp_orbit, positivity_report,
    ComputeOptions,
};
use crate::laurent::{LaurentPoly, Monomial, VarId};
use crate::orbits::OrbitLabel;
use crate::resolution::{
    build_generating_function, closed_interference_factors, find_directed_partition,
    interference_factors, resolution_pair, DirectedPartition, GfForm, PartitionStrategy,
};
use crate::rootsys::{positive_roots, PositiveRoot, Quiver};

/// The reference three-vertex quiver `1 -> 2 <- 3`.
pub fn reference_quiver() -> Quiver {
    Quiver::new(3, vec![(1, 2), (3, 2)]).expect("reference quiver is valid")
}

/// The reference dimension vector for [`reference_quiver`].
pub fn reference_dimension() -> Vec<u32> {
    vec![2, 3, 2]
}

/// The reference orbit: multiplicity one on the roots (1,1,1), (1,1,0),
/// (0,1,0) and (0,0,1).
pub fn reference_orbit() -> OrbitLabel {
    let q = reference_quiver();
    let roots = positive_roots(&q).expect("reference quiver has a root system");
    let mut mults = vec![0u32; roots.len()];
    for coords in [[1, 1, 1], [1, 1, 0], [0, 1, 0], [0, 0, 1]] {
        let idx = roots
            .iter()
            .position(|r| r.coords() == coords)
            .expect("root present");
        mults[idx] = 1;
    }
    OrbitLabel { mults }
}

/// Two reference directed partitions of the full positive-root set of the
/// reference quiver.
pub fn reference_partitions() -> (DirectedPartition, DirectedPartition) {
    let root = |coords: &[u32]| PositiveRoot(coords.to_vec());
    let first = DirectedPartition::new(vec![
        vec![root(&[0, 1, 0])],
        vec![root(&[1, 1, 0]), root(&[0, 1, 1]), root(&[1, 1, 1])],
        vec![root(&[1, 0, 0]), root(&[0, 0, 1])],
    ]);
    let second = DirectedPartition::new(vec![
        vec![root(&[0, 1, 0]), root(&[1, 1, 0]), root(&[0, 1, 1])],
        vec![root(&[1, 1, 1]), root(&[1, 0, 0]), root(&[0, 0, 1])],
    ]);
    (first, second)
}

/// The class of the reference orbit in the Chern basis:
/// `-c3^(2) + c2^(2) c1^(2) + c2^(2) c1^(1)`.
pub fn golden_chern() -> ChernBasisPoly {
    let mut p = ChernBasisPoly::zero();
    p.add_term(ChernMono::from_symbols([(2, 3)]), BigInt::from(-1));
    p.add_term(ChernMono::from_symbols([(2, 2), (2, 1)]), BigInt::one());
    p.add_term(ChernMono::from_symbols([(2, 2), (1, 1)]), BigInt::one());
    p
}

/// The same class in the Schur-product basis:
/// `s_{2,1}^(2) + s_1^(1) s_2^(2)`.
pub fn golden_schur() -> SchurBasisPoly {
    let mut s = SchurBasisPoly::zero();
    s.add_term(
        vec![
            Partition::empty(),
            Partition::new(vec![2, 1]),
            Partition::empty(),
        ],
        BigInt::one(),
    );
    s.add_term(
        vec![
            Partition::new(vec![1]),
            Partition::new(vec![2]),
            Partition::empty(),
        ],
        BigInt::one(),
    );
    s
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(
    out: &mut Vec<CheckResult>,
    name: &str,
    f: impl FnOnce() -> std::result::Result<(), String>,
) {
    let (passed, detail) = match f() {
        Ok(()) => (true, String::new()),
        Err(d) => (false, d),
    };
    out.push(CheckResult { name: name.to_string(), passed, detail });
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(
    got: T,
    want: T,
) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, want {want:?}"))
    }
}

fn five_term_input() -> (LaurentPoly, [VarId; 5]) {
    let (u1, u2) = (VarId::new(1, 1), VarId::new(1, 2));
    let (v1, v2) = (VarId::new(2, 1), VarId::new(2, 2));
    let w = VarId::new(3, 1);
    let mut p = LaurentPoly::zero();
    for (exps, coeff) in [
        (vec![(u1, 2), (u2, 1), (v1, 5), (v2, 1), (w, 2)], 1),
        (vec![(u1, 2), (u2, 1), (v1, 1), (v2, 2), (w, 3)], 1),
        (vec![(u1, 1), (u2, 4)], 1),
        (vec![(v1, -1), (v2, 2)], 1),
        (vec![(u1, -1), (u2, -2)], 1),
    ] {
        p.add_term(Monomial::from_exps(exps), BigInt::from(coeff));
    }
    (p, [u1, u2, v1, v2, w])
}

fn geometric_series_input() -> (LaurentPoly, VarId, VarId) {
    // u1 u2 / (1 - u1/u2), expanded inside the window of nonnegative
    // exponents at total degree 2: u1 u2 + u1^2 (later terms leave the
    // window).
    let (u1, u2) = (VarId::new(1, 1), VarId::new(1, 2));
    let mut p = LaurentPoly::zero();
    p.add_term(Monomial::from_exps([(u1, 1), (u2, 1)]), BigInt::one());
    p.add_term(Monomial::from_exps([(u1, 2)]), BigInt::one());
    p.add_term(Monomial::from_exps([(u1, 3), (u2, -1)]), BigInt::one());
    (p, u1, u2)
}

fn chern(symbols: &[(u32, u32)], coeff: i64) -> ChernBasisPoly {
    ChernBasisPoly::from_term(
        ChernMono::from_symbols(symbols.iter().copied()),
        BigInt::from(coeff),
    )
}

fn straightening_checks(out: &mut Vec<CheckResult>) {
    check(out, "straighten: (3,4) vanishes", || {
        expect_eq(straighten(&[3, 4]), Straightened::Zero)
    });
    check(out, "straighten: (1,4) = -(3,2)", || {
        expect_eq(
            straighten(&[1, 4]),
            Straightened::Signed(-1, Partition::new(vec![3, 2])),
        )
    });
    check(out, "straighten: (1,5,4) = +(4,3,3)", || {
        expect_eq(
            straighten(&[1, 5, 4]),
            Straightened::Signed(1, Partition::new(vec![4, 3, 3])),
        )
    });
}

fn operator_checks(out: &mut Vec<CheckResult>) {
    let (p, _) = five_term_input();
    let map: BTreeMap<u32, u32> = BTreeMap::from([(1, 1), (2, 2), (3, 2)]);
    check(out, "symbol operation: five-term input", || {
        let want = chern(&[(1, 2), (1, 1), (2, 5), (2, 1), (2, 2)], 1)
            .add(&chern(&[(1, 2), (1, 1), (2, 1), (2, 2), (2, 3)], 1))
            .add(&chern(&[(1, 1), (1, 4)], 1));
        expect_eq(c_op(&p, &map).map_err(|e| e.to_string())?, want)
    });
    check(out, "symbol operation: antisymmetric pair cancels", || {
        let (u1, u2) = (VarId::new(1, 1), VarId::new(1, 2));
        let mut f = LaurentPoly::zero();
        f.add_term(Monomial::from_exps([(u1, 3), (u2, 2)]), BigInt::one());
        f.add_term(Monomial::from_exps([(u1, 2), (u2, 3)]), BigInt::from(-1));
        let got = c_op(&f, &BTreeMap::from([(1, 1)])).map_err(|e| e.to_string())?;
        expect_eq(got.is_zero(), true)
    });
    check(out, "symbol operation: geometric series = c1^2 + c2", || {
        let (p, _, _) = geometric_series_input();
        let got = c_op(&p, &BTreeMap::from([(1, 1)])).map_err(|e| e.to_string())?;
        expect_eq(got, chern(&[(1, 1), (1, 1)], 1).add(&chern(&[(1, 2)], 1)))
    });
    check(out, "determinant operation: five-term input", || {
        let (p, [u1, u2, v1, v2, w]) = five_term_input();
        let groups = [
            VarGroup { vertex: 1, vars: vec![u1, u2] },
            VarGroup { vertex: 2, vars: vec![v1, v2] },
            VarGroup { vertex: 2, vars: vec![w] },
        ];
        let got = delta_op(&p, &groups).map_err(|e| e.to_string())?;
        let want = crate::delta_ops::delta_to_chern(&[2, 1], 1)
            .mul(&crate::delta_ops::delta_to_chern(&[5, 1], 2))
            .mul(&crate::delta_ops::delta_to_chern(&[2], 2))
            .add(&crate::delta_ops::delta_to_chern(&[3, 2], 1).neg())
            .add(&crate::delta_ops::delta_to_chern(&[1], 2).neg());
        expect_eq(got, want)
    });
    check(out, "determinant operation: geometric series = c1^2", || {
        let (p, u1, u2) = geometric_series_input();
        let groups = [VarGroup { vertex: 1, vars: vec![u1, u2] }];
        let got = delta_op(&p, &groups).map_err(|e| e.to_string())?;
        expect_eq(got, chern(&[(1, 1), (1, 1)], 1))
    });
    check(out, "discriminant exchange: (8,5) special case", || {
        // C((u1^8 u2^5)(1 - u1/u2)) = c8 c5 - c9 c4 = Delta_85.
        let (u1, u2) = (VarId::new(1, 1), VarId::new(1, 2));
        let mut f = LaurentPoly::zero();
        f.add_term(Monomial::from_exps([(u1, 8), (u2, 5)]), BigInt::one());
        f.add_term(Monomial::from_exps([(u1, 9), (u2, 4)]), BigInt::from(-1));
        let via_c = c_op(&f, &BTreeMap::from([(1, 1)])).map_err(|e| e.to_string())?;
        let mut g = LaurentPoly::zero();
        g.add_term(Monomial::from_exps([(u1, 8), (u2, 5)]), BigInt::one());
        let groups = [VarGroup { vertex: 1, vars: vec![u1, u2] }];
        let via_delta = delta_op(&g, &groups).map_err(|e| e.to_string())?;
        expect_eq(via_c, via_delta)
    });
}

fn root_system_checks(out: &mut Vec<CheckResult>) {
    check(out, "root system: reference quiver has six roots", || {
        let roots =
            positive_roots(&reference_quiver()).map_err(|e| e.to_string())?;
        let want: Vec<PositiveRoot> = [
            [0, 0, 1],
            [0, 1, 0],
            [0, 1, 1],
            [1, 0, 0],
            [1, 1, 0],
            [1, 1, 1],
        ]
        .iter()
        .map(|c| PositiveRoot(c.to_vec()))
        .collect();
        expect_eq(roots, want)
    });
}

fn reference_orbit_checks(out: &mut Vec<CheckResult>) {
    let q = reference_quiver();
    let e = reference_dimension();
    let m = reference_orbit();
    let (p1, p2) = reference_partitions();
    let opts = ComputeOptions::default();
    for (pname, partition) in [("first", &p1), ("second", &p2)] {
        for (fname, form) in [
            ("discriminant", GfForm::CForm),
            ("determinant", GfForm::DeltaForm),
            ("per-vertex", GfForm::VertexForm),
        ] {
            check(
                out,
                &format!("reference orbit: {fname} form, {pname} partition"),
                || {
                    let got = compute(&q, &e, &m, partition, form, &opts)
                        .map_err(|err| err.to_string())?;
                    expect_eq(got.chern, golden_chern())?;
                    expect_eq(got.degree, 3)
                },
            );
        }
        check(
            out,
            &format!("reference orbit: Schur basis, {pname} partition"),
            || {
                let got = compute_vertex_form(&q, &e, &m, partition, &opts)
                    .map_err(|err| err.to_string())?;
                let report = positivity_report(&got).map_err(|err| err.to_string())?;
                expect_eq(got.schur, Some(golden_schur()))?;
                expect_eq(report.is_empty(), true)
            },
        );
    }
    check(out, "reference orbit: interference product closed form", || {
        let roots = positive_roots(&q).map_err(|err| err.to_string())?;
        for partition in [&p1, &p2] {
            let pair =
                resolution_pair(&q, &roots, &m, partition).map_err(|err| err.to_string())?;
            expect_eq(
                interference_factors(&q, &pair),
                closed_interference_factors(&q, &pair),
            )?;
        }
        Ok(())
    });
}

fn determinant_oracle_checks(out: &mut Vec<CheckResult>) {
    check(out, "rank determinant: fixed small cases", || {
        expect_eq(gtp_oracle(1, 1, 1), chern(&[(2, 1)], 1))?;
        expect_eq(
            gtp_oracle(1, 2, 1),
            chern(&[(2, 1), (2, 1)], 1).add(&chern(&[(2, 2)], -1)),
        )?;
        expect_eq(gtp_oracle(2, 3, 0), ChernBasisPoly::one())
    });
    check(out, "rank determinant: matches computed classes", || {
        let q = Quiver::new(2, vec![(1, 2)]).map_err(|e| e.to_string())?;
        let roots = positive_roots(&q).map_err(|e| e.to_string())?;
        let opts = ComputeOptions::default();
        for (e1, e2, r) in [(1, 1, 1), (2, 2, 1), (2, 3, 2)] {
            let m = gtp_orbit(e1, e2, r);
            let support: Vec<PositiveRoot> =
                m.support(&roots).into_iter().cloned().collect();
            let partition =
                find_directed_partition(&q, &support, PartitionStrategy::PreferLow)
                    .map_err(|err| err.to_string())?;
            let got = compute_vertex_form(&q, &[e1, e2], &m, &partition, &opts)
                .map_err(|err| err.to_string())?;
            expect_eq(got.chern, gtp_oracle(e1, e2, r))?;
        }
        Ok(())
    });
}

fn generating_function_checks(out: &mut Vec<CheckResult>) {
    check(out, "generating function: second-pair expansion terms", || {
        use crate::evaluator::DEFAULT_TERM_CAP;
        use crate::laurent::{expand_capped, prune_inert, ExponentWindow};
        let q = reference_quiver();
        let roots = positive_roots(&q).map_err(|e| e.to_string())?;
        let m = reference_orbit();
        let (_, p2) = reference_partitions();
        let pair = resolution_pair(&q, &roots, &m, &p2).map_err(|e| e.to_string())?;
        let (gf, _) = build_generating_function(&q, &pair, GfForm::DeltaForm);
        let mut lower = BTreeMap::new();
        for (k, &r) in pair.ranks.iter().enumerate() {
            for s in 1..=r {
                lower.insert(VarId::new(k as u32 + 1, s), s as i32 - r as i32);
            }
        }
        let w = ExponentWindow { lower, total_degree: 3 };
        let got = expand_capped(&prune_inert(&gf, &w), &w, DEFAULT_TERM_CAP)
            .map_err(|e| e.to_string())?;
        let u = VarId::new(1, 1);
        let (w1, w2) = (VarId::new(3, 1), VarId::new(3, 2));
        let mut want = LaurentPoly::zero();
        for exps in [
            [0, 2, 1],
            [0, 1, 2],
            [1, 2, 0],
            [1, 1, 1],
            [1, 0, 2],
            [2, -1, 2],
            [2, 1, 0],
            [2, 0, 1],
            [3, -1, 1],
            [3, 0, 0],
            [4, -1, 0],
        ] {
            want.add_term(
                Monomial::from_exps([(u, exps[0]), (w1, exps[1]), (w2, exps[2])]),
                BigInt::one(),
            );
        }
        expect_eq(got, want)
    });
}

/// Runs the full golden-fixture suite.
pub fn run_golden_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    straightening_checks(&mut out);
    operator_checks(&mut out);
    root_system_checks(&mut out);
    generating_function_checks(&mut out);
    reference_orbit_checks(&mut out);
    determinant_oracle_checks(&mut out);
    out
}
