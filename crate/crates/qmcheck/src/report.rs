//! Verification suites and structured reports.
//!
//! Every suite runs a fixed list of named checks and produces a
//! `VerificationReport`. Check ids are stable and indexed in
//! `docs/checks.md`; each check carries an anchor naming the mathematical
//! fact it exercises (or the tag "plumbing" for pure infrastructure).
//! JSON output is byte-deterministic for fixed inputs and version: timings
//! appear only in the text rendering.

use crate::cubic::{self, field::QAlpha};
use crate::hermitian::{self, CheckItem};
use crate::homology::{self, GroupModule, GroupSpec, HomologyResult};
use crate::lattice::ZLattice;
use crate::matrix::IntMat;
use crate::quaternion::{self, rat, rint, OrderName, Quaternion};
use crate::tower::{self, AbelianCoverSpec, TowerSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::time::Instant;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub details: String,
    #[serde(skip)]
    pub timing_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    fn assemble(suite: &str, seed: u64, checks: Vec<Check>) -> Self {
        let summary = Summary {
            pass: checks.iter().filter(|c| c.status == Status::Pass).count(),
            fail: checks.iter().filter(|c| c.status == Status::Fail).count(),
            flagged: checks.iter().filter(|c| c.status == Status::Flagged).count(),
        };
        Self {
            schema_version: SCHEMA_VERSION.into(),
            suite: suite.into(),
            seed,
            checks,
            summary,
        }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (schema {}, seed {})\n",
            self.suite, SCHEMA_VERSION, self.seed
        ));
        let id_w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let anchor_w = self.checks.iter().map(|c| c.anchor.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAG",
            };
            out.push_str(&format!(
                "{status}  {:id_w$}  {:anchor_w$}  {} ({} ms)\n",
                c.id, c.anchor, c.details, c.timing_ms
            ));
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} flagged\n",
            self.summary.pass, self.summary.fail, self.summary.flagged
        ));
        out
    }
}

/// Parameters common to the suites; every field has a default so that a
/// bare `verify all` makes sense.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    /// None means the symbolic coefficient field.
    pub alpha: Option<BigRational>,
    pub symbolic: bool,
    pub genus: Option<u32>,
    pub prime: u64,
    pub seed: u64,
    pub samples: usize,
    pub random_members: usize,
    pub pairs: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            alpha: Some(rint(2)),
            symbolic: false,
            genus: None,
            prime: 11,
            seed: 0x5EED_CAFE,
            samples: 10_000,
            random_members: 20,
            pairs: 100,
        }
    }
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn run<F: FnOnce() -> (bool, String)>(&mut self, id: &str, anchor: &str, f: F) {
        let t0 = Instant::now();
        let (ok, details) = f();
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details,
            timing_ms: t0.elapsed().as_millis(),
        });
    }

    fn item(&mut self, anchor: &str, item: CheckItem) {
        self.checks.push(Check {
            id: item.id,
            anchor: anchor.into(),
            status: if item.flagged {
                Status::Flagged
            } else if item.passed {
                Status::Pass
            } else {
                Status::Fail
            },
            details: item.details,
            timing_ms: 0,
        });
    }

    fn flag(&mut self, id: &str, anchor: &str, details: String) {
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Flagged,
            details,
            timing_ms: 0,
        });
    }
}

fn random_quat(rng: &mut StdRng) -> Quaternion {
    let mut c = || rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9));
    Quaternion::new(c(), c(), c(), c())
}

// --- quaternion suite ---

pub fn quaternion_suite(params: &SuiteParams) -> Vec<Check> {
    let mut r = Runner::new();

    r.run("unit-count-lipschitz", "quaternion-orders/unit-groups", || {
        let u = quaternion::unit_group(OrderName::LipschitzMprime).unwrap();
        (u.len() == 8, format!("|units| = {}", u.len()))
    });
    r.run("unit-count-hurwitz", "quaternion-orders/unit-groups", || {
        let u = quaternion::unit_group(OrderName::HurwitzM).unwrap();
        (u.len() == 24, format!("|units| = {}", u.len()))
    });
    r.run("unit-inverse-is-conjugate", "quaternion-orders/involution", || {
        let u = quaternion::unit_group(OrderName::HurwitzM).unwrap();
        let ok = u
            .iter()
            .all(|g| g.inverse().unwrap() == g.conj() && g.mul(&g.conj()) == Quaternion::one());
        (ok, "g^-1 = conj(g) and g conj(g) = 1 on all 24 units".into())
    });
    r.run("membership-split", "quaternion-orders/maximal-order", || {
        let u = Quaternion::u_hat();
        let half = Quaternion::new(rat(1, 2), rat(1, 2), rint(0), rint(0));
        let ok = quaternion::order_membership(&u, OrderName::HurwitzM)
            && !quaternion::order_membership(&u, OrderName::LipschitzMprime)
            && quaternion::order_membership(&Quaternion::one(), OrderName::LipschitzMprime)
            && !quaternion::order_membership(&half, OrderName::HurwitzM);
        (ok, "u in M \\ M', 1 in M', (1+i)/2 outside M".into())
    });
    r.run("order-basis-closure", "quaternion-orders/ring-axioms", || {
        let ok = [OrderName::LipschitzMprime, OrderName::HurwitzM]
            .iter()
            .all(|&o| {
                let basis = quaternion::order_basis(o);
                basis
                    .iter()
                    .all(|x| basis.iter().all(|y| quaternion::order_membership(&x.mul(y), o)))
            });
        (ok, "both order bases are multiplicatively closed".into())
    });
    r.run("ideal-indices", "two-sided-ideal/index", || {
        let d = quaternion::ideal_p_data();
        (
            d.index_in_m == BigInt::from(4) && d.index_in_mprime == BigInt::from(2),
            format!("[M : P] = {}, [M' : P] = {}", d.index_in_m, d.index_in_mprime),
        )
    });
    r.run("ideal-two-sided", "two-sided-ideal/bilateral", || {
        let d = quaternion::ideal_p_data();
        (d.two_sided, "(1+i)M = M(1+i) as lattices".into())
    });
    r.run("ideal-trace-even", "two-sided-ideal/even-trace", || {
        let d = quaternion::ideal_p_data();
        (d.trace_even, "reduced trace is even on the ideal basis".into())
    });
    r.run("ideal-square", "two-sided-ideal/square", || {
        let sq = quaternion::ideal_p_squared();
        let two_m = quaternion::order_lattice(OrderName::HurwitzM).scale(&rint(2));
        (sq == two_m, "P.P = 2M as lattices".into())
    });
    r.run("mod2-quotient-ring", "mod-two-quotient/ring-structure", || {
        let q = quaternion::mod2_quotient_table();
        let commutative = (0..4).all(|x| (0..4).all(|y| q.table[x][y] == q.table[y][x]));
        (
            q.is_isomorphic && q.two_u_image == [0, 0, 0, 1] && commutative,
            "16-entry table matches the nilpotent double-dual numbers; 2u maps to the top monomial"
                .into(),
        )
    });
    let samples = params.samples;
    let seed = params.seed;
    r.run("algebra-axioms-randomized", "quaternion-algebra/axioms", move || {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..samples {
            let p = random_quat(&mut rng);
            let q = random_quat(&mut rng);
            if p.mul(&q).trace() != q.mul(&p).trace() {
                return (false, "trace symmetry failed".into());
            }
            if p.mul(&q).conj() != q.conj().mul(&p.conj()) {
                return (false, "conjugation anti-homomorphism failed".into());
            }
            if p.mul(&q).norm() != p.norm() * q.norm() {
                return (false, "norm multiplicativity failed".into());
            }
        }
        (true, format!("{samples} random pairs checked exactly"))
    });
    r.checks
}

// --- lattice suite ---

pub fn lattice_suite(params: &SuiteParams) -> Vec<Check> {
    use crate::hermitian::{
        pairing_eval, solve_form_matrix, QuatVector2, SkewHermitianForm,
    };
    let mut r = Runner::new();
    let form = SkewHermitianForm::polarization();
    let l1 = QuatVector2::l1();
    let l2 = QuatVector2::l2();
    let qbasis = [
        Quaternion::one(),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
    ];

    r.run("pairing-values", "polarization-matrix/evaluations", || {
        let got1: Vec<BigRational> = qbasis
            .iter()
            .map(|g| pairing_eval(&form, &l1, &l1.scalar_mul(g)))
            .collect();
        let got2: Vec<BigRational> = qbasis
            .iter()
            .map(|g| pairing_eval(&form, &l1, &l2.scalar_mul(g)))
            .collect();
        let ok = got1 == vec![rint(0), rint(-2), rint(-2), rint(0)]
            && got2 == vec![rint(-1), rint(1), rint(0), rint(0)]
            && pairing_eval(&form, &l2, &l2) == rint(0);
        (
            ok,
            format!(
                "<l1, g l1> = {:?}, <l1, g l2> = {:?}",
                got1.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                got2.iter().map(|v| v.to_string()).collect::<Vec<_>>()
            ),
        )
    });

    let seed = params.seed;
    r.run("pairing-antisymmetry", "polarization-matrix/antisymmetry", move || {
        let form = SkewHermitianForm::polarization();
        let mut rng = StdRng::seed_from_u64(seed ^ 0xA5);
        for _ in 0..500 {
            let mut v = || {
                QuatVector2::new(random_quat(&mut rng), random_quat(&mut rng))
            };
            let (x, y) = (v(), v());
            if pairing_eval(&form, &x, &y) != -pairing_eval(&form, &y, &x) {
                return (false, "antisymmetry failed".into());
            }
        }
        (true, "500 random pairs, exact".into())
    });

    r.run("basis-change-split-form", "module-basis-change/solved", || {
        let lp1 = l1
            .scalar_mul(&Quaternion::from_ints(-1, -1, 0, 0))
            .add(&l2.scalar_mul(&Quaternion::from_ints(0, -1, 0, -1)));
        match solve_form_matrix(&form, (&lp1, &l2)) {
            Ok(s) => {
                let ok = s.v11 == Quaternion::zero()
                    && s.v12 == Quaternion::one()
                    && s.v21 == Quaternion::one().neg()
                    && s.v22 == Quaternion::zero();
                (ok, format!("solved matrix [[{}, {}], [{}, {}]]", s.v11, s.v12, s.v21, s.v22))
            }
            Err(e) => (false, e),
        }
    });

    {
        let lp1_plus = l1
            .scalar_mul(&Quaternion::from_ints(-1, -1, 0, 0))
            .add(&l2.scalar_mul(&Quaternion::from_ints(0, 1, 0, 1)));
        let solved = solve_form_matrix(&form, (&lp1_plus, &l2)).expect("valid basis");
        r.flag(
            "basis-change-published-sign",
            "module-basis-change/sign-discrepancy",
            format!(
                "the published plus-sign basis gives v11 = {} (nonzero), not the split form; \
                 the minus-sign variant reproduces [[0, 1], [-1, 0]]",
                solved.v11
            ),
        );
    }

    for item in hermitian::verify_named_lattices() {
        let anchor = match item.id.as_str() {
            "product-lattice-gram" => "product-polarization/unimodularity",
            "half-trace-gram-principal" => "isogeny-lattice/principality",
            "full-trace-gram-det" => "isogeny-lattice/normalization",
            "order-action-stability" => "isogeny-lattice/order-action",
            "isogeny-lattice-identity" => "isogeny-lattice/decomposition",
            "w2-lattice-stability" => "half-twist-involution/lattice",
            "w2-pairing-preservation" => "half-twist-involution/pairing",
            "w2-squared" => "half-twist-involution/square",
            "module-basis-display" => "module-basis-change/display-ambiguity",
            _ => "plumbing",
        };
        r.item(anchor, item);
    }

    for item in hermitian::lemma_kernel_checks() {
        let anchor = match item.id.as_str() {
            "kernel-generator" => "kernel-identities/generator",
            "kernel-intersection-rank" => "kernel-identities/rank",
            "kernel-intersection-lattice" => "kernel-identities/lattice-equality",
            "half-multiple-integral" => "kernel-identities/half-multiple",
            "graph-intersection" => "kernel-identities/graph",
            "sum-decomposition" => "kernel-identities/sum",
            "sum-directness" => "kernel-identities/directness",
            _ => "plumbing",
        };
        r.item(anchor, item);
    }

    let seed = params.seed;
    r.run("gram-det-unimodular-invariance", "plumbing", move || {
        let mut rng = StdRng::seed_from_u64(seed ^ 0x9E);
        let form = SkewHermitianForm::split_symplectic(rat(1, 2));
        let b_lat = hermitian::block_lattice(
            &quaternion::order_basis(OrderName::HurwitzM),
            &quaternion::order_basis(OrderName::IdealP),
        );
        let base = hermitian::gram_matrix(&form, &b_lat).det;
        for _ in 0..10 {
            let mut rows = b_lat.basis_rows();
            for _ in 0..12 {
                let i = rng.gen_range(0..8);
                let j = rng.gen_range(0..8);
                if i == j {
                    continue;
                }
                let c = rint(rng.gen_range(-3i64..=3));
                let src = rows[j].clone();
                for (t, v) in rows[i].iter_mut().enumerate() {
                    *v += &c * &src[t];
                }
            }
            let moved = ZLattice::from_rows(8, rows);
            if moved != b_lat || hermitian::gram_matrix(&form, &moved).det != base {
                return (false, "determinant moved under a unimodular change".into());
            }
        }
        (true, "10 random unimodular basis changes".into())
    });

    r.checks
}

// --- homology suite ---

fn fmt_h(h: &HomologyResult) -> String {
    if h.torsion.is_empty() {
        format!("Z^{}", h.free_rank)
    } else {
        format!(
            "Z^{} + {}",
            h.free_rank,
            h.torsion
                .iter()
                .map(|t| format!("Z/{t}"))
                .collect::<Vec<_>>()
                .join(" + ")
        )
    }
}

pub fn homology_suite(params: &SuiteParams) -> Vec<Check> {
    let mut r = Runner::new();

    r.run("boundary-simplified-form", "chain-complex/boundary-regression", || {
        let g = GroupSpec::quaternion_group();
        let psi = homology::normal_form_psi(&g, 2);
        let fox = homology::fox_derivatives(&g, 2, &psi).unwrap();
        let n = g.order();
        let zero = vec![BigInt::zero(); n];
        let mut ib = vec![BigInt::zero(); n];
        ib[2] = BigInt::one();
        ib[0] = -BigInt::one();
        let mut jb = vec![BigInt::zero(); n];
        jb[4] = BigInt::one();
        jb[0] = -BigInt::one();
        let ok = fox[0] == zero && fox[2] == zero && fox[1] == ib && fox[3] == jb;
        (ok, "d2(F) = (i - 1) beta + (j - 1) delta in the group ring".into())
    });

    r.run("boundary-composition", "chain-complex/d1-after-d2", || {
        let g = GroupSpec::quaternion_group();
        let psi = homology::normal_form_psi(&g, 2);
        for module in [
            GroupModule::regular(&g),
            GroupModule::lipschitz(&g),
            GroupModule::trivial(&g),
        ] {
            let cx = homology::build_surface_complex(2, &g, &psi, &module).unwrap();
            if !cx.d2.mul(&cx.d1).is_zero() {
                return (false, "d1 after d2 is nonzero".into());
            }
        }
        (true, "d1 d2 = 0 on all three coefficient systems".into())
    });

    r.run("homology-ranks", "cover-homology/ranks", || {
        let survey = homology::genus2_homology_survey();
        let ok = survey["regular-h0"] == HomologyResult { free_rank: 1, torsion: vec![] }
            && survey["regular-h1"] == HomologyResult { free_rank: 18, torsion: vec![] }
            && survey["regular-h2"] == HomologyResult { free_rank: 1, torsion: vec![] }
            && survey["lipschitz-h1"]
                == HomologyResult { free_rank: 8, torsion: vec![BigInt::from(2)] }
            && survey["klein-h1"] == HomologyResult { free_rank: 10, torsion: vec![] };
        (
            ok,
            format!(
                "H1(regular) = {}, H1(rank-4) = {}, H1(klein) = {}",
                fmt_h(&survey["regular-h1"]),
                fmt_h(&survey["lipschitz-h1"]),
                fmt_h(&survey["klein-h1"])
            ),
        )
    });

    r.run("euler-characteristic", "cover-homology/euler", || {
        let g = GroupSpec::quaternion_group();
        let psi = homology::normal_form_psi(&g, 2);
        let cx = homology::build_surface_complex(2, &g, &psi, &GroupModule::regular(&g)).unwrap();
        let h0 = homology::homology(&cx, 0).free_rank as i64;
        let h1 = homology::homology(&cx, 1).free_rank as i64;
        let h2 = homology::homology(&cx, 2).free_rank as i64;
        let ok = cx.euler_characteristic() == -16 && h0 - h1 + h2 == -16;
        (ok, format!("chi = {} = {} - {} + {}", cx.euler_characteristic(), h0, h1, h2))
    });

    r.run("module-basis-cycles", "prym-homology/generators", || {
        let rep = homology::verify_prym_basis();
        let ok = rep.lambda1_is_cycle
            && rep.lambda2_is_cycle
            && rep.image_rank == 8
            && rep.central_acts_as_minus_one
            && rep.half_sum_stabilizes
            && rep.span_equals_image;
        (
            ok,
            format!(
                "cycles: {}, {}; image rank {}, half-sum stable {}, span equality {}",
                rep.lambda1_is_cycle,
                rep.lambda2_is_cycle,
                rep.image_rank,
                rep.half_sum_stabilizes,
                rep.span_equals_image
            ),
        )
    });

    let mut genera = vec![1u32, 2, 3];
    if let Some(g) = params.genus {
        if !genera.contains(&g) {
            genera.push(g);
        }
    }
    r.run("norm-kernel-count", "double-cover-pushforward/kernel-count", move || {
        for g in &genera {
            let got = homology::norm_kernel_count(*g as usize);
            let expect = BigInt::from(2).pow(2 * g - 1);
            if got != expect {
                return (false, format!("genus {g}: got {got}, expected {expect}"));
            }
        }
        (
            true,
            format!(
                "kernel sizes match 2^(2g-1) for g in {:?}",
                genera
            ),
        )
    });

    let seed = params.seed;
    r.run("snf-roundtrip", "plumbing", move || {
        let mut rng = StdRng::seed_from_u64(seed ^ 0x51F);
        for _ in 0..100 {
            let rows = rng.gen_range(1..=20);
            let cols = rng.gen_range(1..=20);
            let m = IntMat::from_big_rows(
                (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                            .collect()
                    })
                    .collect(),
            );
            let s = m.smith();
            if s.u.mul(&m).mul(&s.v) != s.d
                || !s.u.det().abs().is_one()
                || !s.v.det().abs().is_one()
                || s.uinv.mul(&s.d).mul(&s.vinv) != m
            {
                return (false, "roundtrip identity failed".into());
            }
        }
        (true, "100 random matrices up to 20x20".into())
    });

    r.checks
}

// --- tower suite ---

pub fn tower_suite(_params: &SuiteParams) -> Vec<Check> {
    let mut r = Runner::new();

    r.run("admissible-enumeration", "tower-census/five-cases", || {
        let cases = tower::enumerate_admissible();
        let expect = [
            (0u32, 2u32, 2u32, 0u32),
            (1, 1, 1, 1),
            (1, 2, 0, 0),
            (2, 0, 0, 0),
            (3, 0, 0, 0),
        ];
        let ok = cases.len() == 5
            && expect
                .iter()
                .all(|&(g, ai, aj, ak)| {
                    cases.iter().any(|s| (s.g, s.a_i, s.a_j, s.a_k) == (g, ai, aj, ak))
                });
        (
            ok,
            format!(
                "cases: {}",
                cases
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        )
    });

    r.run("invariants-table", "tower-census/dimension-rows", || {
        let rows = [
            ((0u32, 2u32, 2u32, 0u32), (4i64, 1i64, 1i64)),
            ((1, 2, 0, 0), (4, 2, 1)),
            ((2, 0, 0, 0), (4, 3, 1)),
            ((1, 1, 1, 1), (6, 3, 3)),
            ((3, 0, 0, 0), (8, 6, 6)),
        ];
        for ((g, ai, aj, ak), (dp, dm, ds)) in rows {
            let spec = TowerSpec::new(g, 0, ai, aj, ak).unwrap();
            let inv = tower::tower_invariants(&spec).unwrap();
            if (inv.dim_p, inv.dim_moduli, inv.dim_shim) != (dp, dm, ds) {
                return (false, format!("row {spec} mismatched"));
            }
        }
        let inv = tower::tower_invariants(&TowerSpec::new(2, 0, 0, 0, 0).unwrap()).unwrap();
        (
            (inv.g_pm, inv.g_tilde) == (5, 9),
            "all five rows match; middle and top genera are 5 and 9 in the unramified genus-2 case"
                .into(),
        )
    });

    r.run("dimension-pairs", "tower-census/genus-branch-pairs", || {
        let pairs = tower::dimension_allowed_pairs();
        (
            pairs == vec![(0, 4), (1, 2), (1, 3), (2, 0), (2, 1), (3, 0)],
            format!("{pairs:?}"),
        )
    });

    r.run("parity-exclusion", "tower-census/parity", || {
        let ok = TowerSpec::new(1, 0, 3, 0, 0).is_err()
            && TowerSpec::new(2, 0, 1, 0, 0).is_err()
            && tower::enumerate_admissible()
                .iter()
                .any(|s| (s.g, s.a_i, s.a_j, s.a_k) == (1, 1, 1, 1));
        (
            ok,
            "(1; 3, 0, 0) and (2; 1, 0, 0) are removed; (1; 1, 1, 1) survives".into(),
        )
    });

    r.run("surjectivity-exclusion", "tower-census/monodromy", || {
        let excluded = !tower::enumerate_admissible()
            .iter()
            .any(|s| (s.g, s.a_i, s.a_j, s.a_k) == (0, 4, 0, 0));
        (
            excluded,
            "(0; 4, 0, 0) admits no surjective monodromy and is excluded".into(),
        )
    });

    r.run("five-point-quotients", "abelian-cover-tables/five-points", || {
        let spec = AbelianCoverSpec::five_points();
        let counts = tower::level_counts(&tower::abelian_quotient_genera(&spec));
        let level = |l: u32, g: i64| counts[&l].get(&g).copied().unwrap_or(0);
        let ok = level(1, 0) == 10
            && level(1, 1) == 5
            && level(2, 0) == 10
            && level(2, 1) == 15
            && level(2, 2) == 10
            && level(3, 1) == 5
            && level(3, 3) == 10
            && level(4, 5) == 1
            && tower::character_sum_check(&spec);
        (
            ok,
            "levels (10,5) / (10,15,10) / (5,10) / (1); character sum matches".into(),
        )
    });

    r.run("three-pair-quotients", "abelian-cover-tables/three-pairs", || {
        let spec = AbelianCoverSpec::three_pairs();
        let counts = tower::level_counts(&tower::abelian_quotient_genera(&spec));
        let level = |l: u32, g: i64| counts[&l].get(&g).copied().unwrap_or(0);
        let ok = level(1, 0) == 3
            && level(1, 1) == 3
            && level(1, 2) == 1
            && level(2, 1) == 3
            && level(2, 3) == 4
            && level(3, 5) == 1
            && tower::character_sum_check(&spec);
        (
            ok,
            "levels (3,3,1) / (3,4) / (1); character sum matches".into(),
        )
    });

    r.run("hyperplane-count", "abelian-cover-tables/index-two", || {
        for k in 1..=4u32 {
            let n = tower::all_subspaces(k)
                .iter()
                .filter(|s| s.len() == (1usize << (k - 1)))
                .count() as u32;
            if n != (1 << k) - 1 {
                return (false, format!("k = {k}: {n} hyperplanes"));
            }
        }
        (true, "2^k - 1 index-two subgroups for k = 1..4".into())
    });

    r.run("lift-count-normal-form", "quaternion-lifts/counts", || {
        let c = tower::count_quaternion_lifts(&[1, 0, 2, 0]).unwrap();
        (
            c.lifts == 16
                && c.distinct_covers == 4
                && c.actions_per_cover == 4
                && c.conjugation_orbits_per_cover == 1,
            format!(
                "{} lifts, {} covers, {} actions per cover (single conjugation orbit: {})",
                c.lifts,
                c.distinct_covers,
                c.actions_per_cover,
                c.conjugation_orbits_per_cover == 1
            ),
        )
    });

    r.run("lift-count-nonisotropic", "quaternion-lifts/obstruction", || {
        let c = tower::count_quaternion_lifts(&[1, 2, 0, 0]).unwrap();
        (c.lifts == 0, format!("{} lifts", c.lifts))
    });

    r.run("lift-count-trivial", "quaternion-lifts/central-target", || {
        let c = tower::count_quaternion_lifts(&[0, 0, 0, 0]).unwrap();
        (c.lifts == 16, format!("{} lifts", c.lifts))
    });

    r.run("lift-torsor", "quaternion-lifts/character-torsor", || {
        (
            tower::lifts_form_character_torsor(&[1, 0, 2, 0]).unwrap(),
            "sign characters act freely and transitively on the 16 lifts".into(),
        )
    });

    r.run("invariants-monotone", "plumbing", || {
        (
            tower::invariants_sanity(3, 4),
            "dim P is even and strictly increasing in the branch count".into(),
        )
    });

    r.checks
}

// --- cubic suite ---

pub fn cubic_suite(params: &SuiteParams) -> Vec<Check> {
    let mut r = Runner::new();

    if params.symbolic {
        r.run("symbolic-family", "nine-nodal-family/symbolic", || {
            let alpha = QAlpha::alpha();
            for a in cubic::BLOCK_A {
                for b in cubic::BLOCK_B {
                    let p = cubic::node_point::<QAlpha>(a, b);
                    if !cubic::is_singular_point(&alpha, &p).unwrap() {
                        return (false, format!("marked point ({a}, {b}) not singular"));
                    }
                }
            }
            if cubic::is_singular_point(&alpha, &cubic::tenth_node::<QAlpha>()).unwrap() {
                return (false, "full-support point singular for generic alpha".into());
            }
            (true, "nine marked points singular over Q(alpha); the tenth is not".into())
        });
    } else if let Some(alpha) = params.alpha.clone() {
        let a2 = alpha.clone();
        r.run("singular-locus-at-alpha", "nine-nodal-family/singular-locus", move || {
            match cubic::singular_locus(&a2) {
                Ok(locus) => {
                    let expect = if a2 == rint(1) { 10 } else { 9 };
                    let ranks_ok = locus.iter().all(|p| {
                        cubic::node_rank(&a2, p, cubic::default_chart(p)) == Ok(4)
                            && cubic::node_rank(&a2, p, cubic::alternate_chart(p)) == Ok(4)
                    });
                    (
                        locus.len() == expect && ranks_ok,
                        format!(
                            "{} singular points, tangent rank 4 in two charts each",
                            locus.len()
                        ),
                    )
                }
                Err(e) => (false, e),
            }
        });

        let a2 = alpha.clone();
        let prime = params.prime;
        r.run("oracle-at-alpha", "nine-nodal-family/finite-field-oracle", move || {
            match cubic::oracle_agreement(&a2, prime) {
                Ok((sym, counted, p)) => (
                    sym == counted,
                    format!("case split {sym}, mod-{p} scan {counted}"),
                ),
                Err(e) => (false, e),
            }
        });

        let a2 = alpha.clone();
        r.run("plane-incidences-at-alpha", "plane-configuration/incidences", move || {
            match cubic::enumerate_planes(&a2) {
                Ok(planes) => {
                    let per_plane = planes.iter().all(|p| p.nodes_on.len() == 4);
                    let total: usize = planes.iter().map(|p| p.nodes_on.len()).sum();
                    let per_node = cubic::BLOCK_A.iter().all(|&a| {
                        cubic::BLOCK_B.iter().all(|&b| {
                            planes
                                .iter()
                                .filter(|p| p.nodes_on.contains(&(a, b)))
                                .count()
                                == 4
                        })
                    });
                    (
                        planes.len() == 9 && per_plane && total == 36 && per_node,
                        "9 planes, 4 marked points each, 4 planes through each, double count 36"
                            .into(),
                    )
                }
                Err(e) => (false, e),
            }
        });

        let a2 = alpha.clone();
        r.run("cone-of-lines", "node-cone/components", move || {
            // Use the last marked node; for the symmetric member the cone
            // structure holds at the coordinate nodes all the same.
            match cubic::lines_through_node(&a2, 2, 5) {
                Ok(cone) => {
                    let ok = cone.lines.len() == 4
                        && cone.lines.iter().all(|l| l.node_directions.len() == 3)
                        && cone.all_directions_on_cone
                        && cone.q.total_degree() == 2
                        && cone.c.total_degree() == 3;
                    (
                        ok,
                        "4 line components, 3 singular directions each, all chords on the cone"
                            .into(),
                    )
                }
                Err(e) => (false, e),
            }
        });
    }

    r.run("segre-member", "symmetric-member/ten-points", || {
        match cubic::singular_locus(&rint(1)) {
            Ok(locus) => {
                let has_tenth = locus
                    .iter()
                    .any(|p| cubic::same_projective_point(p, &cubic::tenth_node::<BigRational>()));
                match cubic::oracle_agreement(&rint(1), 11) {
                    Ok((sym, counted, _)) => (
                        locus.len() == 10 && has_tenth && sym == counted,
                        format!("{} singular points including the full-support one", locus.len()),
                    ),
                    Err(e) => (false, e),
                }
            }
            Err(e) => (false, e),
        }
    });

    let seed = params.seed;
    let members = params.random_members;
    let prime = params.prime;
    r.run("random-members", "nine-nodal-family/random-sweep", move || {
        let mut rng = StdRng::seed_from_u64(seed ^ 0xC0B1C);
        for t in 0..members {
            let mut alpha = rat(rng.gen_range(-40i64..=40), rng.gen_range(1i64..=12));
            if Zero::is_zero(&alpha) || alpha == rint(1) {
                alpha = rat(5, 3);
            }
            let locus = match cubic::singular_locus(&alpha) {
                Ok(l) => l,
                Err(e) => return (false, e),
            };
            if locus.len() != 9 {
                return (false, format!("member {t}: {} points", locus.len()));
            }
            for p in &locus {
                if cubic::node_rank(&alpha, p, cubic::default_chart(p)) != Ok(4)
                    || cubic::node_rank(&alpha, p, cubic::alternate_chart(p)) != Ok(4)
                {
                    return (false, format!("member {t}: tangent rank below 4"));
                }
            }
            match cubic::oracle_agreement(&alpha, prime) {
                Ok((sym, counted, _)) if sym == counted => {}
                Ok((sym, counted, p)) => {
                    return (false, format!("member {t}: {sym} vs {counted} mod {p}"))
                }
                Err(e) => return (false, e),
            }
        }
        (
            true,
            format!("{members} random members: nine rank-4 points, oracle agreement"),
        )
    });

    r.run("plane-systems", "plane-configuration/systems", || {
        let rep = cubic::plane_systems();
        let class_a = rep.systems.iter().filter(|s| s.class == 'A').count();
        let class_b = rep.systems.iter().filter(|s| s.class == 'B').count();
        let dims_ok = rep.intersection_dims.iter().all(|((a1, b1), (a2, b2), d)| {
            *d == if a1 == a2 || b1 == b2 { 1 } else { 0 }
        });
        (
            rep.systems.len() == 6
                && class_a == 3
                && class_b == 3
                && rep.sharing_ok
                && rep.criterion_ok
                && rep.bijection_ok
                && dims_ok,
            "six systems in two classes of three; sharing, criterion and bijection verified"
                .into(),
        )
    });
    r.flag(
        "plane-transversality-language",
        "plane-configuration/transversality-ambiguity",
        "planes within one system pairwise meet in lines, planes of different systems in points; \
         the point-intersection reading is the one compatible with the incidence criterion"
            .into(),
    );

    r.run("symmetric-change", "symmetric-member/coordinate-change", || {
        let rep = cubic::segre_change_check();
        (
            rep.sums_match && rep.identity_holds && !Zero::is_zero(&rep.lambda),
            format!("lambda = {}", rep.lambda),
        )
    });

    r.run("symmetry-invariance", "nine-nodal-family/block-symmetry", || {
        let (f, l) = cubic::family_member_symbolic();
        let ok = cubic::block_permutations()
            .iter()
            .all(|perm| f.permute(perm) == f && l.permute(perm) == l);
        (ok, "all 36 block permutations preserve both equations".into())
    });

    r.run("symbolic-plane-membership", "plane-configuration/symbolic", || {
        let alpha = QAlpha::alpha();
        let ok = cubic::PlaneAB::all()
            .iter()
            .all(|p| cubic::plane_membership(&alpha, &p.parametrization()) == Ok(true));
        (ok, "all nine planes lie on the family over Q(alpha)".into())
    });

    r.run("line-samples", "node-chords/containment", || {
        let alpha = rint(2);
        let o14 = cubic::node_point::<BigRational>(0, 3);
        let o25 = cubic::node_point::<BigRational>(1, 4);
        let o15 = cubic::node_point::<BigRational>(0, 4);
        let smooth: cubic::Point<BigRational> =
            [rint(1), rint(2), rint(-12), rint(1), rint(2), rint(6)];
        let ok = cubic::line_in_family(&alpha, &o14, &o25) == Ok(true)
            && cubic::line_in_family(&alpha, &o14, &o15) == Ok(true)
            && !cubic::is_singular_point(&alpha, &smooth).unwrap()
            && cubic::line_in_family(&alpha, &o14, &smooth) == Ok(false);
        (
            ok,
            "chords between singular points are contained; a generic chord is not".into(),
        )
    });

    let seed = params.seed;
    let pairs = params.pairs;
    r.run("moduli-invariant", "moduli-coordinate/agreement", move || {
        let mut rng = StdRng::seed_from_u64(seed ^ 0xB0DA);
        for _ in 0..pairs {
            let mut a = rat(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=9));
            if Zero::is_zero(&a) {
                a = rat(4, 3);
            }
            let b = if rng.gen_bool(0.5) {
                if rng.gen_bool(0.5) {
                    a.clone()
                } else {
                    a.recip()
                }
            } else {
                let mut b = rat(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=9));
                if Zero::is_zero(&b) {
                    b = rat(7, 2);
                }
                b
            };
            let expected = b == a || b == a.recip();
            match cubic::iso_invariant(&a, &b) {
                Ok(rep) => {
                    if rep.isomorphic != expected || !rep.swap_identity_ok {
                        return (false, format!("pair ({a}, {b})"));
                    }
                }
                Err(e) => return (false, e),
            }
        }
        (true, format!("{pairs} random pairs agree with the invariant"))
    });

    r.checks
}

/// Execute a suite by name.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<VerificationReport, String> {
    if let Some(alpha) = &params.alpha {
        if Zero::is_zero(alpha) {
            return Err("alpha must be nonzero".into());
        }
    }
    let checks = match name {
        "quaternion" => quaternion_suite(params),
        "lattice" => lattice_suite(params),
        "homology" => homology_suite(params),
        "tower" => tower_suite(params),
        "cubic" => cubic_suite(params),
        "all" => {
            let mut all = quaternion_suite(params);
            all.extend(lattice_suite(params));
            all.extend(homology_suite(params));
            all.extend(tower_suite(params));
            all.extend(cubic_suite(params));
            all
        }
        other => return Err(format!("unknown suite '{other}'")),
    };
    Ok(VerificationReport::assemble(name, params.seed, checks))
}

/// Every check id must appear in the documentation index.
pub fn documented_check_ids() -> Vec<String> {
    let docs = include_str!("../../../docs/checks.md");
    docs.lines()
        .filter_map(|l| {
            let l = l.trim();
            l.strip_prefix("| `")
                .and_then(|rest| rest.split('`').next())
                .map(|s| s.to_string())
        })
        .collect()
}
