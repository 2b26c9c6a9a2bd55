//! Golden-value and property checks, grouped by suite and by acceptance
//! criterion.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::fixtures::{self, Misprint};
use crate::alexander::{
    alexander, burau_tilde, equal_up_to_unit, gamma, gamma_seed, minor_det, pattern_matrix, system_matrix, Via,
};
use crate::braid::BraidWord;
use crate::cluster::{cluster_pattern, parse_steps, r_steps, ClassicalSeed};
use crate::error::{Error, Result};
use crate::invariant::{
    build_xc, diagram_from_braid, universal_invariant, xc_axioms_check, zeroth_order_check, AlexanderConvention,
    InvariantResult, XCData,
};
use crate::matrix::Matrix;
use crate::qcluster::{composite_images, derive_perturbed_r, r0_matrix, z_composite, Form, TorusAlgebra};
use crate::quiver::{disk_quiver, z_quiver, Seed};
use crate::scalar::{parse_in, EpsPoly, GaussRat, LaurentT, MultiRat, RatFuncT};
use crate::weyl::{
    agree_mod_t, conj_by_gauss, cut_t_degree, rewrite_normal_order, Gen, NOElem, PGauss, Side, SymbolAlgebra, WMono,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Scalar,
    Quiver,
    Cluster,
    Alexander,
    Weyl,
    Qcluster,
    Invariant,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Scalar, Suite::Quiver, Suite::Cluster, Suite::Alexander, Suite::Weyl, Suite::Qcluster, Suite::Invariant];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Scalar => "scalar",
            Suite::Quiver => "quiver",
            Suite::Cluster => "cluster",
            Suite::Alexander => "alexander",
            Suite::Weyl => "weyl",
            Suite::Qcluster => "qcluster",
            Suite::Invariant => "invariant",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Reproduces the recorded correction of a misprinted value; the
    /// printed value itself is not matched.
    Deviation,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Deviation => "DEVIATION",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: Suite,
    /// Acceptance criterion this check decides, if any.
    pub criterion: Option<u8>,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl Check {
    pub fn over_budget(&self) -> bool {
        self.budget.is_some_and(|b| self.elapsed > b)
    }

    /// Met as written: passed, and within its time budget.
    pub fn meets_criterion(&self) -> bool {
        self.status == Status::Pass && !self.over_budget()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {} ({:.2?}", self.suite.name(), self.name, self.status, self.elapsed)?;
        if let Some(b) = self.budget {
            write!(f, ", budget {b:?}")?;
        }
        write!(f, ")")?;
        if !self.detail.is_empty() {
            write!(f, " — {}", self.detail)?;
        }
        Ok(())
    }
}

type Outcome = (Status, String);

fn pass(detail: impl Into<String>) -> Result<Outcome> {
    Ok((Status::Pass, detail.into()))
}

fn fail(detail: impl Into<String>) -> Result<Outcome> {
    Ok((Status::Fail, detail.into()))
}

fn run(
    suite: Suite,
    criterion: Option<u8>,
    name: &'static str,
    budget: Option<Duration>,
    body: impl FnOnce() -> Result<Outcome>,
) -> Check {
    let start = Instant::now();
    let (status, detail) = match body() {
        Ok(o) => o,
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    Check { suite, criterion, name, status, detail, elapsed: start.elapsed(), budget }
}

/// Worst of several outcomes, details joined.
fn combine(parts: Vec<Outcome>) -> Outcome {
    let status = if parts.iter().any(|p| p.0 == Status::Fail) {
        Status::Fail
    } else if parts.iter().any(|p| p.0 == Status::Deviation) {
        Status::Deviation
    } else {
        Status::Pass
    };
    let detail = parts.into_iter().map(|p| p.1).filter(|d| !d.is_empty()).collect::<Vec<_>>().join("; ");
    (status, detail)
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn rat(s: &str) -> Result<MultiRat> {
    s.parse()
}

fn rats(v: &[String]) -> Result<Vec<MultiRat>> {
    v.iter().map(|s| rat(s)).collect()
}

fn matrix(rows: &[Vec<String>]) -> Result<Matrix> {
    let rows = rows.iter().map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<RatFuncT>>>()).collect::<Result<_>>()?;
    Ok(Matrix::from_rows(rows))
}

fn laurent(s: &str) -> Result<LaurentT> {
    let r: RatFuncT = s.parse()?;
    r.as_laurent().cloned().ok_or_else(|| Error::Parse(format!("{s:?} is not a Laurent polynomial")))
}

/// Compares computed slots with printed ones, accepting a recorded
/// correction at a misprinted slot as a deviation.
fn compare_slots<T: PartialEq + fmt::Display>(
    what: &str,
    got: &[T],
    printed: &[T],
    corrected: &dyn Fn(usize) -> Option<Result<T>>,
) -> Result<Outcome> {
    if got.len() != printed.len() {
        return fail(format!("{what}: {} slots, {} printed", got.len(), printed.len()));
    }
    let mut deviations = Vec::new();
    for (k, (g, p)) in got.iter().zip(printed).enumerate() {
        if g == p {
            continue;
        }
        match corrected(k).transpose()? {
            Some(c) if &c == g => deviations.push(k + 1),
            _ => return fail(format!("{what} slot {}: computed {g}, printed {p}", k + 1)),
        }
    }
    if deviations.is_empty() {
        pass(format!("{what}: all {} slots match", got.len()))
    } else {
        Ok((
            Status::Deviation,
            format!("{what}: slots {deviations:?} differ from the printed values and equal the recorded corrections"),
        ))
    }
}

fn misprint_lookup<'a, K: Ord>(
    m: &'a std::collections::BTreeMap<K, Misprint>,
    key: impl Fn(usize) -> K + 'a,
) -> impl Fn(usize) -> Option<Result<MultiRat>> + 'a {
    move |k| m.get(&key(k)).map(|mp| rat(&mp.corrected))
}

// ---- scalar ----

fn scalar_checks() -> Vec<Check> {
    let s = Suite::Scalar;
    vec![
        run(s, None, "rational functions reduce", None, || {
            let a: RatFuncT = "(T^2 - 1)/(T - 1)".parse()?;
            let b: RatFuncT = "T + 1".parse()?;
            Ok(if a == b { (Status::Pass, String::new()) } else { (Status::Fail, format!("{a} ≠ {b}")) })
        }),
        run(s, None, "gaussian rationals", None, || {
            let i = GaussRat::i();
            let z: GaussRat = "3/4-2 i".parse()?;
            let ok = &i * &i == GaussRat::from_int(-1) && z.to_string().parse::<GaussRat>()? == z && &z * &z.conj() == "73/16".parse()?;
            Ok((if ok { Status::Pass } else { Status::Fail }, String::new()))
        }),
        run(s, None, "display round-trips through the reader", None, || {
            let mut rng = StdRng::seed_from_u64(1);
            for _ in 0..50 {
                let num = LaurentT::from_ints(rng.gen_range(-3..=3), &[rng.gen_range(-4..=4), rng.gen_range(-4..=4), 1]);
                let den = LaurentT::from_ints(0, &[rng.gen_range(1..=4), rng.gen_range(-2..=2), 1]);
                let r = RatFuncT::new(num, den)?;
                if r.to_string().parse::<RatFuncT>()? != r {
                    return fail(format!("{r} does not round-trip"));
                }
            }
            pass("50 random rational functions")
        }),
        run(s, None, "ε-exponentials are inverse", None, || {
            let a = GaussRat::from_int(3);
            let e = EpsPoly::exp_eps(&a, 4);
            let f = EpsPoly::exp_eps(&-&a, 4);
            Ok((if (&e * &f).is_one() { Status::Pass } else { Status::Fail }, String::new()))
        }),
    ]
}

// ---- quiver ----

fn quiver_checks() -> Vec<Check> {
    let s = Suite::Quiver;
    vec![
        run(s, None, "printed two-punctured disk quiver", None, || {
            let fx = fixtures::r_operator()?;
            let q = Seed::from_arrows(fx.quiver.vertices, &fx.quiver.frozen, &fx.quiver.arrows)?;
            if q != disk_quiver(2)? {
                return fail("fixture quiver differs from disk_quiver(2)");
            }
            if q.eps2_matrix() != z_quiver().eps2_matrix() {
                return fail("Z-quiver amalgamation differs from the disk quiver");
            }
            pass("disk quiver = printed quiver = D ⊔ E glued along 4′ ↦ 5′")
        }),
        run(s, None, "mutation is involutive", None, || {
            let q = disk_quiver(3)?;
            for k in (0..q.len()).filter(|&k| !q.is_frozen(k)) {
                if q.mutate(k)?.mutate(k)? != q {
                    return fail(format!("μ{} twice is not the identity", k + 1));
                }
            }
            pass("disk quiver, n = 3")
        }),
        run(s, None, "R-operator restores the disk quiver", None, || {
            for n in 2..=4 {
                for i in 1..n {
                    let g = ClassicalSeed::generic(disk_quiver(n)?, false);
                    if g.r_operator(i, 1)?.quiver() != g.quiver() {
                        return fail(format!("Ř{i} on n = {n}"));
                    }
                }
            }
            pass("n = 2, 3, 4")
        }),
    ]
}

// ---- cluster ----

fn criterion_1() -> Result<Outcome> {
    let fx = fixtures::r_operator()?;
    if parse_steps(&fx.steps)? != r_steps(1) {
        return fail("printed composite differs from Ř₁");
    }
    let seed = ClassicalSeed::generic(disk_quiver(2)?, true);
    let out = seed.r_operator(1, 1)?;
    let a = compare_slots("R^A", out.avars().expect("tracked"), &rats(&fx.r_a)?, &|_| None)?;
    let x = compare_slots("R^X", out.xvars(), &rats(&fx.r_x)?, &|_| None)?;
    Ok(combine(vec![a, x]))
}

fn criterion_5() -> Result<Outcome> {
    let mut parts = Vec::new();
    let g3 = ClassicalSeed::generic(disk_quiver(3)?, true);
    let lhs = g3.r_operator(1, 1)?.r_operator(2, 1)?.r_operator(1, 1)?;
    let rhs = g3.r_operator(2, 1)?.r_operator(1, 1)?.r_operator(2, 1)?;
    parts.push(if lhs == rhs {
        (Status::Pass, "Ř₁Ř₂Ř₁ = Ř₂Ř₁Ř₂ on A and X (n = 3)".to_string())
    } else {
        (Status::Fail, "Ř₁Ř₂Ř₁ ≠ Ř₂Ř₁Ř₂".to_string())
    });
    let back = g3.r_operator(2, 1)?.r_operator(2, -1)?;
    parts.push(if back == g3 {
        (Status::Pass, "Ř₂Ř₂⁻¹ = 1".to_string())
    } else {
        (Status::Fail, "Ř₂⁻¹ does not invert Ř₂".to_string())
    });
    // far commutation needs two non-adjacent generators, so four strands
    let g4 = ClassicalSeed::generic(disk_quiver(4)?, true);
    let ok = g4.r_operator(1, 1)?.r_operator(3, 1)? == g4.r_operator(3, 1)?.r_operator(1, 1)?;
    parts.push(if ok {
        (Status::Pass, "Ř₁Ř₃ = Ř₃Ř₁ (n = 4)".to_string())
    } else {
        (Status::Fail, "Ř₁Ř₃ ≠ Ř₃Ř₁".to_string())
    });
    Ok(combine(parts))
}

fn cluster_checks() -> Vec<Check> {
    let s = Suite::Cluster;
    vec![
        run(s, Some(1), "R-operator goldens R^A, R^X", secs(1), criterion_1),
        run(s, Some(5), "braid relations on generic seeds", secs(30), criterion_5),
    ]
}

// ---- alexander ----

fn criterion_2() -> Result<Outcome> {
    let fx = fixtures::trefoil()?;
    let w: BraidWord = fx.braid.parse()?;
    let seed = ClassicalSeed::new(disk_quiver(2)?, rats(&fx.x1)?)?;
    let last = cluster_pattern(&w, &seed)?.last().clone();
    let slots = last.xvars();
    let x4 = compare_slots("x[4]", slots, &rats(&fx.x4_printed)?, &misprint_lookup(&fx.misprints, |k| k + 1))?;

    // slot 1 is T⁻¹(Mx)₁ and slot 7 is 1/(Mx)₂
    let t = MultiRat::t();
    let lin = |e: &MultiRat| e.as_linear_form(&[1, 2]).ok_or_else(|| Error::NotGammaImage(format!("{e}")));
    let m = Matrix::from_rows(vec![lin(&(&t * &slots[0]))?, lin(&slots[6].inv()?)?]);
    let printed_m = matrix(&fx.fixed_point_matrix)?;
    let fp = if m == printed_m && m == burau_tilde(&w) {
        (Status::Pass, "fixed-point matrix matches (and equals ρ̃(σ₁³))".to_string())
    } else {
        (Status::Fail, format!("fixed-point matrix {m}, printed {printed_m}"))
    };
    let b = &m - &Matrix::identity(2);
    let sys = if b == matrix(&fx.system_matrix)? {
        (Status::Pass, "system matrix matches".to_string())
    } else {
        (Status::Fail, format!("system matrix {b}"))
    };
    let det = minor_det(&b, 1)?;
    let want = LaurentT::from_ints(0, &[1, 0, -1, 0, 1]);
    let printed_delta = laurent(&fx.delta_of_t_squared)?;
    let dt = if equal_up_to_unit(&det, &want) && equal_up_to_unit(&det, &printed_delta) {
        (Status::Pass, format!("minor determinant {det} ≐ T⁴ − T² + 1"))
    } else {
        (Status::Fail, format!("minor determinant {det}"))
    };
    Ok(combine(vec![x4, fp, sys, dt]))
}

fn criterion_3() -> Result<Outcome> {
    let fx = fixtures::figure_eight()?;
    let w: BraidWord = fx.braid.parse()?;
    if rats(&fx.y1)? != gamma(3)? {
        return fail("printed y[1] is not Γ₃(x)");
    }
    let last = cluster_pattern(&w, &gamma_seed(3)?)?.last().clone();
    let y5 = compare_slots("y[5]", last.xvars(), &rats(&fx.y5_printed)?, &|_| None)?;
    let b = system_matrix(&w, Via::Cluster)?;
    let printed = matrix(&fx.system_matrix)?;
    let sys = if b == printed {
        (Status::Pass, "3×3 system matrix matches".to_string())
    } else {
        (Status::Fail, format!("system matrix {b}, printed {printed}"))
    };
    let det = b.leading_block(2).det();
    let want: RatFuncT = fx.upper_left_det.parse()?;
    let dt = if det == want {
        (Status::Pass, format!("upper-left 2×2 determinant = {det}"))
    } else {
        (Status::Fail, format!("upper-left determinant {det}, printed {want}"))
    };
    Ok(combine(vec![y5, sys, dt]))
}

pub fn random_word(rng: &mut StdRng, max_strands: usize, max_len: usize) -> Result<BraidWord> {
    let n = rng.gen_range(2..=max_strands);
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len).map(|_| (rng.gen_range(1..n), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    BraidWord::new(n, letters)
}

fn criterion_4() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(46);
    for _ in 0..20 {
        let w = random_word(&mut rng, 4, 8)?;
        if pattern_matrix(&w)? != burau_tilde(&w) {
            return fail(format!("pattern_matrix ≠ burau_tilde for [{w}]"));
        }
    }
    pass("20 random words, n ≤ 4, length ≤ 8")
}

fn alexander_checks() -> Vec<Check> {
    let s = Suite::Alexander;
    vec![
        run(s, Some(2), "trefoil pipeline", secs(1), criterion_2),
        run(s, Some(3), "figure-eight pipeline", secs(5), criterion_3),
        run(s, Some(4), "Burau equivalence", secs(60), criterion_4),
        run(s, None, "knot table", None, || {
            for (name, w, delta) in KNOT_TABLE {
                let got = alexander(&w.parse()?)?;
                if got != laurent(delta)? {
                    return fail(format!("{name}: {got}"));
                }
            }
            pass("0₁, 3₁, 4₁, 5₁, 5₂")
        }),
    ]
}

/// Name, braid, and the symmetric Alexander polynomial in `S`, written with
/// `T` for the reader.
pub const KNOT_TABLE: [(&str, &str, &str); 5] = [
    ("0_1", "1", "1"),
    ("3_1", "1 1 1", "T - 1 + T^-1"),
    ("4_1", "1 -2 1 -2", "-T + 3 - T^-1"),
    ("5_1", "1 1 1 1 1", "T^2 - T + 1 - T^-1 + T^-2"),
    ("5_2", "1 1 1 2 -1 2", "2T - 3 + 2T^-1"),
];

// ---- weyl ----

fn word_of(m: &WMono) -> Vec<Gen> {
    let mut w = Vec::new();
    for &(l, a, _) in m.entries() {
        let g = if a > 0 { Gen::X(l) } else { Gen::XInv(l) };
        w.extend(std::iter::repeat_n(g, a.unsigned_abs() as usize));
    }
    for &(l, _, b) in m.entries() {
        w.extend(std::iter::repeat_n(Gen::P(l), b as usize));
    }
    w
}

fn star_vs_rewrite(m1: &WMono, m2: &WMono) -> bool {
    let got = NOElem::mono(m1.clone(), 0).star(&NOElem::mono(m2.clone(), 0));
    let mut w = word_of(m1);
    w.extend(word_of(m2));
    got == rewrite_normal_order(&w, 0)
}

fn criterion_6() -> Result<Outcome> {
    let monos: Vec<WMono> = (0..=6i32).flat_map(|a| (0..=(6 - a) as u32).map(move |b| WMono::xp(1, a, b))).collect();
    let mut pairs = 0;
    for m1 in &monos {
        for m2 in monos.iter().filter(|m2| m1.degree() + m2.degree() <= 6) {
            if !star_vs_rewrite(m1, m2) {
                return fail(format!("{m1} ⋆ {m2}"));
            }
            pairs += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(13);
    let mono = |rng: &mut StdRng| {
        WMono::from_entries((1..=2).map(|l| (l, rng.gen_range(-2..=2), rng.gen_range(0..=2u32))))
    };
    for _ in 0..500 {
        let (m1, m2) = (mono(&mut rng), mono(&mut rng));
        if !star_vs_rewrite(&m1, &m2) {
            return fail(format!("{m1} ⋆ {m2}"));
        }
    }
    pass(format!("{pairs} one-leg pairs of degree ≤ 6, 500 random two-leg pairs"))
}

/// `1 + T·A₀` with small integer `A₀`.
pub fn random_tadic(rng: &mut StdRng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |r, c| {
        let v = RatFuncT::from_laurent(LaurentT::from_ints(1, &[rng.gen_range(-2..=2), rng.gen_range(-1..=1)]));
        if r == c {
            &RatFuncT::one() + &v
        } else {
            v
        }
    })
}

fn criterion_7() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(17);
    let n = 6;
    for k in 0..20 {
        let (a, b) = (random_tadic(&mut rng, 2), random_tadic(&mut rng, 2));
        let pa = PGauss::phi(vec![1, 2], a.clone(), 0)?;
        let pb = PGauss::phi(vec![1, 2], b.clone(), 0)?;
        let ab = &a * &b;
        if pa.mul(&pb)?.lambda() != &ab {
            return fail(format!("pair {k}: coupling of the product is not AB"));
        }
        let lhs = cut_t_degree(&pa.expansion(n).star(&pb.expansion(n)), n as i64);
        let rhs = PGauss::phi(vec![1, 2], ab, 0)?.expansion(n);
        if !agree_mod_t(&lhs, &rhs, n as i64)? {
            return fail(format!("pair {k}: expansions differ below T^{}", n + 1));
        }
    }
    pass("20 random pairs; couplings exact, expansions agree mod T⁷")
}

fn weyl_checks() -> Vec<Check> {
    let s = Suite::Weyl;
    vec![
        run(s, Some(6), "star product against rewriting", secs(30), criterion_6),
        run(s, Some(7), "Gaussian monoid law", secs(60), criterion_7),
    ]
}

// ---- qcluster ----

fn criterion_8() -> Result<Outcome> {
    let fx = fixtures::quantum_mutation()?;
    if parse_steps(&fx.composite)? != z_composite() {
        return fail("printed composite differs from the implemented one");
    }
    let alg = TorusAlgebra(Form::new(z_quiver().eps2_matrix().to_vec()));
    let (i1, i7) = composite_images()?;
    let x1 = if i1 == parse_in(&fx.x1_image, &alg)? {
        (Status::Pass, format!("X₁ ↦ {}", fx.x1_image))
    } else {
        (Status::Fail, format!("X₁ ↦ {i1}"))
    };
    let x7 = if i7 == parse_in(&fx.x7_image_printed, &alg)? {
        (Status::Pass, format!("X₇ ↦ {}", fx.x7_image_printed))
    } else {
        match fx.misprints.get("x7_image") {
            Some(mp) if i7 == parse_in(&mp.corrected, &alg)? => (
                Status::Deviation,
                format!("X₇ ↦ {}, not the printed {} ({})", mp.corrected, fx.x7_image_printed, mp.reason),
            ),
            _ => (Status::Fail, format!("X₇ ↦ {i7}")),
        }
    };
    Ok(combine(vec![x1, x7]))
}

fn criterion_9() -> Result<Outcome> {
    let fx = fixtures::perturbed_r()?;
    let d = 1;
    let alg = SymbolAlgebra { d };
    let pr = derive_perturbed_r(d)?;
    let mut parts = Vec::new();
    parts.push(if pr.lambda == r0_matrix() && pr.r.lambda() == &r0_matrix() {
        (Status::Pass, "ε⁰ Gaussian is R₀".to_string())
    } else {
        (Status::Fail, format!("ε⁰ coupling {}", pr.r.lambda()))
    });
    let f0 = pr.f.eps_coeff(0);
    let printed: Vec<NOElem> = fx.f_terms_printed.iter().map(|s| parse_in(s, &alg)).collect::<Result<_>>()?;
    let mut matched = 0;
    let mut total = NOElem::zero(d);
    let mut status = Status::Pass;
    let mut notes = Vec::new();
    for (k, term) in printed.iter().enumerate() {
        let Some((m, _)) = term.terms().next().filter(|_| term.len() == 1) else {
            return fail(format!("printed term {} is not a single monomial", k + 1));
        };
        let got = NOElem::term(m.clone(), f0.coeff(m), d);
        if &got == term {
            matched += 1;
        } else {
            match fx.misprints.get(&k) {
                Some(mp) if got == parse_in(&mp.corrected, &alg)? => {
                    status = Status::Deviation;
                    notes.push(format!("term {}: {} instead of {} ({})", k + 1, mp.corrected, fx.f_terms_printed[k], mp.reason));
                }
                _ => {
                    status = Status::Fail;
                    notes.push(format!("term {}: coefficient of {m} is {}", k + 1, f0.coeff(m).coeff(0)));
                }
            }
        }
        total = &total + &got;
    }
    if total != f0 {
        status = Status::Fail;
        notes.push(format!("f has terms beyond the printed seven: {}", &f0 - &total));
    }
    parts.push((status, format!("{matched} of {} terms of f verbatim{}", printed.len(), notes.iter().map(|n| format!("; {n}")).collect::<String>())));
    let r0 = r0_matrix();
    for (g, want) in &fx.r0_conjugation {
        let e = parse_in(g, &alg)?;
        let got = conj_by_gauss(&[1, 2], &r0, &e, Side::Right)?;
        if got != parse_in(want, &alg)? {
            parts.push((Status::Fail, format!("R₀⁻¹{g}R₀ = {got}")));
        }
    }
    Ok(combine(parts))
}

fn qcluster_checks() -> Vec<Check> {
    let s = Suite::Qcluster;
    vec![
        run(s, Some(8), "quantum mutation goldens", secs(5), criterion_8),
        run(s, Some(9), "perturbed R derivation", secs(10), criterion_9),
    ]
}

// ---- invariant ----

fn criterion_10() -> Result<Outcome> {
    let mut parts = Vec::new();
    for d in [1, 2] {
        let xc = build_xc(d)?;
        let bad: Vec<String> = xc_axioms_check(&xc).into_iter().filter(|a| !a.holds).map(|a| a.to_string()).collect();
        parts.push(if bad.is_empty() {
            (Status::Pass, format!("all five hold mod ε^{}", d + 1))
        } else {
            (Status::Fail, format!("d = {d}: {}", bad.join(", ")))
        });
    }
    Ok(combine(parts))
}

fn invariant_of(w: &str, xc: &XCData) -> Result<InvariantResult> {
    universal_invariant(&diagram_from_braid(&w.parse()?)?, xc)
}

fn criterion_11() -> Result<Outcome> {
    let xc = build_xc(0)?;
    let mut units = Vec::new();
    for (name, w, _) in KNOT_TABLE {
        let z = invariant_of(w, &xc)?;
        let delta = alexander(&w.parse()?)?;
        match zeroth_order_check(&z, &delta) {
            Some(AlexanderConvention::TSquared) => units.push(name),
            Some(AlexanderConvention::T) if name == "0_1" => units.push(name),
            other => return fail(format!("{name}: ω₀ = {}, check {other:?}", z.omega.coeff(0))),
        }
    }
    pass(format!("ω₀·Δ(T²) is a unit for {}", units.join(", ")))
}

/// Markov/conjugation-equivalent presentations and the highest order each is
/// compared at. Only the six-crossing 5₂ pair is capped: at ε² it alone
/// takes several minutes.
pub const MARKOV_PAIRS: [(&str, &str, usize); 7] = [
    ("1 1 1", "1 1 1 2", 3),
    ("1 1 1", "1 1 1 -2", 3),
    ("1 -2 1 -2", "-2 1 -2 1", 3),
    ("1 -2 1 -2", "1 -2 1 -2 -3", 3),
    ("1", "-1 2", 3),
    ("1", "1 -2 -3", 3),
    ("1 1 1 2 -1 2", "1 1 2 -1 2 1", 1),
];

fn criterion_12(d: usize) -> Result<Outcome> {
    let mut done = Vec::new();
    let mut cache: Vec<(usize, XCData)> = Vec::new();
    for (a, b, cap) in MARKOV_PAIRS {
        let k = d.min(cap);
        if !cache.iter().any(|(o, _)| *o == k) {
            cache.push((k, build_xc(k)?));
        }
        let xc = &cache.iter().find(|(o, _)| *o == k).expect("cached").1;
        let (za, zb) = (invariant_of(a, xc)?, invariant_of(b, xc)?);
        if !za.same_as(&zb) {
            return fail(format!("[{a}] and [{b}] differ at order {k}"));
        }
        done.push(format!("[{a}] ≡ [{b}] to ε^{k}"));
    }
    pass(done.join(", "))
}

fn invariant_checks(d: usize) -> Vec<Check> {
    let s = Suite::Invariant;
    vec![
        run(s, Some(10), "XC axioms", secs(300), criterion_10),
        run(s, Some(11), "zeroth-order invariant", secs(300), criterion_11),
        run(s, Some(12), "Markov invariance", secs(600), || criterion_12(d)),
    ]
}

pub fn run_suite(suite: Suite, d: usize) -> Vec<Check> {
    match suite {
        Suite::Scalar => scalar_checks(),
        Suite::Quiver => quiver_checks(),
        Suite::Cluster => cluster_checks(),
        Suite::Alexander => alexander_checks(),
        Suite::Weyl => weyl_checks(),
        Suite::Qcluster => qcluster_checks(),
        Suite::Invariant => invariant_checks(d),
    }
}

/// Runs `suites` on up to `jobs` threads; results come back in suite order.
pub fn run_suites(suites: &[Suite], d: usize, jobs: usize) -> Vec<Check> {
    let jobs = jobs.max(1);
    let mut results: Vec<Vec<Check>> = vec![Vec::new(); suites.len()];
    for (chunk_suites, chunk_out) in suites.chunks(jobs).zip(results.chunks_mut(jobs)) {
        std::thread::scope(|sc| {
            for (s, out) in chunk_suites.iter().zip(chunk_out.iter_mut()) {
                sc.spawn(move || *out = run_suite(*s, d));
            }
        });
    }
    results.into_iter().flatten().collect()
}

/// Every acceptance criterion, in order.
pub fn criteria(d: usize) -> Vec<Check> {
    let mut all: Vec<Check> = Suite::ALL.iter().flat_map(|&s| run_suite(s, d)).filter(|c| c.criterion.is_some()).collect();
    all.sort_by_key(|c| c.criterion);
    all
}
