use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::Rng;

use super::random::{gaussian_function, sparse_function, stream_rng};
use super::sweep::{default_plans, sweep_plan};
use super::{Row, RowSink, Suite, SuiteConfig, DENSE_POINT_LIMIT};
use crate::constructions::{
    anisotropic_eta, example_affine_not_refined, example_refined_not_affine, extremal_function,
    extremal_set, is_affine_kakeya, is_full_refined_kakeya, kakeya_bound_report, lower_bound_ratio,
    max_vertical_fiber, moment_report, omega_partition, paraboloid_surface, ExtremalKind, PointSet,
    Target,
};
use crate::error::Result;
use crate::field::Field;
use crate::fourier::{
    central_fourier, decomposition_error, g_rho_identity, inverse_central_fourier,
    key_counting_check, quadratic_fiber_count, split_bound_check,
};
use crate::geometry::AffineSpace;
use crate::heisenberg::Heisenberg;
use crate::maximal::bounds::{
    heis_bounds, heis_rank_endpoint_bounds, linearization_endpoint_bounds, planar_bounds,
    refined_bounds,
};
use crate::maximal::{
    affine_max_op, exponent_a_terms, exponent_ard_terms, heis_max_op, l2_operator_norm, linearize,
    project_aggregate, q_power, ttstar_spectrum, verify_bound_tol, BoundSpec, Chooser, Domain,
    ExtendedExponent, Geometry, GridFunction, Operator, VerifyReport,
};

/// Absolute tolerance for eigenvalues and singular values.
const SPECTRAL_TOL: f64 = 1e-8;
/// Largest group used by the sparse lower-bound computations.
const SPARSE_POINT_LIMIT: usize = 1 << 18;
/// Allowed gap between a fitted slope and its exponent.
const SLOPE_TOL: f64 = 0.1;

pub(super) struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
    pub suite: Suite,
    pub sink: RowSink,
    pub notes: Vec<String>,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a SuiteConfig, suite: Suite) -> Self {
        Ctx {
            cfg,
            suite,
            sink: RowSink::default(),
            notes: Vec::new(),
        }
    }

    fn rng(&self, q: u32, trial: usize, purpose: u8) -> rand_chacha::ChaCha8Rng {
        stream_rng(self.cfg.seed, self.suite.id(), q, trial, purpose)
    }

    fn report(&mut self, n: usize, r: &VerifyReport, trial: Option<usize>) {
        self.sink
            .push(Row::from_report(self.suite, n, r, self.cfg.seed, trial));
    }

    #[allow(clippy::too_many_arguments)]
    fn row(
        &mut self,
        bound: String,
        q: u32,
        n: usize,
        lhs: f64,
        rhs: f64,
        holds: bool,
        trial: Option<usize>,
    ) {
        let ratio = if rhs != 0.0 {
            lhs / rhs
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        self.sink.push(Row {
            suite: self.suite.name().to_string(),
            bound,
            q,
            n,
            u: None,
            v: None,
            lhs,
            rhs,
            ratio,
            holds,
            seed: self.cfg.seed,
            trial,
        });
    }

    /// `lhs <= rhs` up to the configured relative tolerance.
    fn le(&mut self, bound: String, q: u32, n: usize, lhs: f64, rhs: f64, trial: Option<usize>) {
        let holds = lhs <= rhs * (1.0 + self.cfg.tol) + f64::MIN_POSITIVE;
        self.row(bound, q, n, lhs, rhs, holds, trial);
    }

    /// `lhs == rhs` exactly (for counts).
    fn eq(&mut self, bound: String, q: u32, n: usize, lhs: f64, rhs: f64) {
        self.row(bound, q, n, lhs, rhs, lhs == rhs, None);
    }

    fn skip(&mut self, what: String) {
        self.notes.push(format!("{}: skipped {what}", self.suite));
    }
}

pub(super) fn run(ctx: &mut Ctx<'_>) -> Result<()> {
    let qs = ctx.cfg.qs.clone();
    for q in qs {
        let field = ctx.cfg.field(q)?;
        match ctx.suite {
            Suite::Census => census(ctx, &field)?,
            Suite::PlanarL2 => planar_l2(ctx, &field)?,
            Suite::Ttstar => ttstar(ctx, &field)?,
            Suite::Diag => maximal_bounds(ctx, &field, true)?,
            Suite::Offdiag => maximal_bounds(ctx, &field, false)?,
            Suite::RdL2 => rd_l2(ctx, &field)?,
            Suite::Fourier => fourier(ctx, &field)?,
            Suite::Exponents => {}
            Suite::LowerBounds => lower_bounds(ctx, &field)?,
            Suite::Examples => examples(ctx, &field)?,
            Suite::KakeyaBounds => kakeya_bounds(ctx, &field)?,
            Suite::Moments => moments(ctx, &field)?,
        }
    }
    if ctx.suite == Suite::Exponents {
        exponents(ctx)?;
    }
    Ok(())
}

fn census(ctx: &mut Ctx<'_>, field: &Field) -> Result<()> {
    let n = ctx.cfg.n;
    let h = Heisenberg::new(field, n)?;
    let q = field.q();
    if h.num_points() > DENSE_POINT_LIMIT {
        ctx.skip(format!("q = {q}, n = {n} (too many points)"));
        return Ok(());
    }
    let c = h.census();
    let names = [
        "points",
        "projective-directions",
        "refined-directions",
        "lines",
        "lines-per-direction",
        "lines-per-refined-direction",
        "lines-per-point",
    ];
    for ((name, e), f) in names
        .iter()
        .zip(c.enumerated.as_array())
        .zip(c.formula.as_array())
    {
        ctx.eq(format!("census-{name}"), q, n, e as f64, f as f64);
    }
    let bush = extremal_set(&h, ExtremalKind::Bush)?.len();
    ctx.eq(
        "census-bush-size".into(),
        q,
        n,
        bush as f64,
        (q as f64).powi(2 * n as i32),
    );
    Ok(())
}

fn planar_l2(ctx: &mut Ctx<'_>, field: &Field) -> Result<()> {
    let q = field.q();
    let plane = AffineSpace::new(field, 2)?;
    let two = ExtendedExponent::int(2);
    let target = (2.0 * q as f64).sqrt();
    for t in 0..ctx.cfg.trials {
        let mut rng = ctx.rng(q, t, 0);
        let family = linearize(Geometry::Affine(&plane), Chooser::Random(rng.gen()))?;
        let norm = l2_operator_norm(&family)?;
        let holds = (norm - target).abs() <= SPECTRAL_TOL * target;
        ctx.row(
            "planar-linearization-norm".into(),
            q,
            1,
            norm,
            target,
            holds,
            Some(t),
        );
        let g = gaussian_function(field, Domain::Affine { d: 2 }, &mut rng);
        check_all(
            ctx,
            1,
            &planar_bounds(q, two, two),
            Operator::Planar(&plane),
            &g,
            "random",
            Some(t),
        )?;
    }
    let d = Domain::Affine { d: 2 };
    let one = Complex64::new(1.0, 0.0);
    for (name, g) in [
        ("point-mass", GridFunction::delta(field, d, 0)?),
        ("constant", GridFunction::constant(field, d, one)),
    ] {
        check_all(
            ctx,
            1,
            &planar_bounds(q, two, two),
            Operator::Planar(&plane),
            &g,
            name,
            None,
        )?;
    }
    Ok(())
}

fn check_all(
    ctx: &mut Ctx<'_>,
    n: usize,
    specs: &[BoundSpec],
    op: Operator<'_>,
    f: &GridFunction,
    input: &str,
    trial: Option<usize>,
) -> Result<()> {
    if specs.is_empty() {
        return Ok(());
    }
    let out = op.evaluate(f)?;
    for spec in specs {
        let mut r = spec.check_values(f.q(), &out, f.norm(spec.u), ctx.cfg.tol);
        r.bound = format!("{}@{input}", spec.name);
        ctx.report(n, &r, trial);
    }
    Ok(())
}

fn ttstar(ctx: &mut Ctx<'_>, field: &Field) -> Result<()> {
    let q = field.q();
    let plane = AffineSpace::new(field, 2)?;
    let mut want = vec![(q - 1) as f64; q as usize + 1];
    want[0] = 2.0 * q as f64;
    let mut worst = (f64::NEG_INFINITY, 0);
    for t in 0..ctx.cfg.trials {
        let mut rng = ctx.rng(q, t, 0);
        let family = linearize(Geometry::Affine(&plane), Chooser::Random(rng.gen()))?;
        let ev = ttstar_spectrum(&family)?;
        let dev = if ev.len() == want.len() {
            ev.iter()
                .zip(&want)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        if dev > worst.0 {
            worst = (dev, t);
        }
    }
    let holds = worst.0 <= SPECTRAL_TOL;
    ctx.row(
        "ttstar-spectrum".into(),
        q,
        1,
        worst.0,
        SPECTRAL_TOL,
        holds,
        Some(worst.1),
    );
    Ok(())
}

fn exponent_grid(diagonal: bool) -> Vec<(ExtendedExponent, ExtendedExponent)> {
    let e = ExtendedExponent::ratio;
    let pts = [
        e(1, 1),
        e(4, 3),
        e(3, 2),
        e(2, 1),
        e(3, 1),
        e(4, 1),
        ExtendedExponent::Infinite,
    ];
    let mut out = Vec::new();
    for &u in &pts {
        for &v in &pts {
            if (u == v) == diagonal {
                out.push((u, v));
            }
        }
    }
    out
}

fn structured_inputs(
    h: &Heisenberg,
    kinds: &[ExtremalKind],
) -> Result<Vec<(&'static str, GridFunction)>> {
    kinds
        .iter()
        .map(|&k| Ok((k.name(), extremal_function(h, k)?)))
        .collect()
}

/// Every planar, Heisenberg and refined inequality on the diagonal `u = v`
/// (or off it), on random and structured inputs, plus the endpoint bounds
/// for linearizations and for `M_{H_n}`.
fn maximal_bounds(ctx: &mut Ctx<'_>, field: &Field, diagonal: bool) -> Result<()> {
    use ExtremalKind::*;
    let q = field.q();
    let plane = AffineSpace::new(field, 2)?;
    let h = Heisenberg::new(field, 1)?;
    let grid = exponent_grid(diagonal);
    let hdom = Domain::Heisenberg { n: 1 };

    let planar_specs: Vec<BoundSpec> = grid
        .iter()
        .flat_map(|&(u, v)| planar_bounds(q, u, v))
        .collect();
    let heis_specs: Vec<BoundSpec> = grid.iter().flat_map(|&(u, v)| heis_bounds(u, v)).collect();
    let rd_specs: Vec<BoundSpec> = grid
        .iter()
        .flat_map(|&(u, v)| refined_bounds(u, v))
        .collect();

    let one = Complex64::new(1.0, 0.0);
    let pdom = Domain::Affine { d: 2 };
    let planar_structured = vec![
        ("point-mass", GridFunction::delta(field, pdom, 0)?),
        ("constant", GridFunction::constant(field, pdom, one)),
    ];
    for (name, g) in &planar_structured {
        check_all(
            ctx,
            1,
            &planar_specs,
            Operator::Planar(&plane),
            g,
            name,
            None,
        )?;
    }
    for (name, g) in structured_inputs(&h, &[PointMass, SingleLine, Bush, Constant])? {
        check_all(ctx, 1, &heis_specs, Operator::Heis(&h), &g, name, None)?;
    }
    let mut rd_kinds = vec![PointMass, SingleLine, TwoLinesBlocking, Constant];
    if field.is_odd() {
        rd_kinds.push(Paraboloid {
            eta: anisotropic_eta(field)?,
        });
    }
    for (name, g) in structured_inputs(&h, &rd_kinds)? {
        check_all(ctx, 1, &rd_specs, Operator::Refined(&h), &g, name, None)?;
    }

    for t in 0..ctx.cfg.trials {
        let mut rng = ctx.rng(q, t, 0);
        let g = gaussian_function(field, pdom, &mut rng);
        check_all(
            ctx,
            1,
            &planar_specs,
            Operator::Planar(&plane),
            &g,
            "random",
            Some(t),
        )?;
        let f = gaussian_function(field, hdom, &mut rng);
        check_all(
            ctx,
            1,
            &heis_specs,
            Operator::Heis(&h),
            &f,
            "random",
            Some(t),
        )?;
        check_all(
            ctx,
            1,
            &rd_specs,
            Operator::Refined(&h),
            &f,
            "random",
            Some(t),
        )?;
        let s = sparse_function(field, hdom, 0.1, &mut rng);
        check_all(
            ctx,
            1,
            &heis_specs,
            Operator::Heis(&h),
            &s,
            "sparse",
            Some(t),
        )?;
        check_all(
            ctx,
            1,
            &rd_specs,
            Operator::Refined(&h),
            &s,
            "sparse",
            Some(t),
        )?;
    }

    if diagonal {
        return Ok(());
    }
    // Endpoint bounds for refined linearizations and for M_{H_n}.
    let lin = linearization_endpoint_bounds(q);
    for t in 0..ctx.cfg.trials {
        let mut rng = ctx.rng(q, t, 1);
        let f = gaussian_function(field, hdom, &mut rng);
        let random = linearize(Geometry::Refined(&h), Chooser::Random(rng.gen()))?;
        let maximizing = linearize(Geometry::Refined(&h), Chooser::Maximizing(&f))?;
        for (name, fam) in [
            ("random-family", &random),
            ("maximizing-family", &maximizing),
        ] {
            for spec in &lin {
                let mut r = verify_bound_tol(spec, Operator::Linear(fam), &f, ctx.cfg.tol)?;
                r.bound = format!("{}@{name}", spec.name);
                ctx.report(1, &r, Some(t));
            }
        }
    }
    let n = ctx.cfg.n;
    let hn = Heisenberg::new(field, n)?;
    if hn.num_points() > DENSE_POINT_LIMIT {
        ctx.skip(format!(
            "endpoint bounds for q = {q}, n = {n} (too many points)"
        ));
        return Ok(());
    }
    let specs = heis_rank_endpoint_bounds(q, n);
    for (name, g) in structured_inputs(&hn, &[PointMass, SingleLine, Bush])? {
        check_all(ctx, n, &specs, Operator::Heis(&hn), &g, name, None)?;
    }
    for t in 0..ctx.cfg.trials {
        let mut rng = ctx.rng(q, t, 2);
        let f = gaussian_function(field, Domain::Heisenberg { n }, &mut rng);
        check_all(ctx, n, &specs, Operator::Heis(&hn), &f, "random", Some(t))?;
    }
    Ok(())
}

fn rd_l2(ctx: &mut Ctx<'_>, field: &Field) -> Result<()> {
    let q = field.q();
    let h = Heisenberg::new(field, 1)?;
    let two = ExtendedExponent::int(2);
    let specs: Vec<BoundSpec> = refined_bounds(two, two)
        .into_iter()
        .filter(|b| b.name == "rd-l2")
        .collect();
    for t in 0..ctx.cfg.trials {
        let mut rng = ctx.rng(q, t, 0);
        let f = gaussian_function(field, Domain::Heisenberg { n: 1 }, &mut rng);
        check_all(ctx, 1, &specs, Operator::Refined(&h), &f, "random", Some(t))?;
    }
    let delta = extremal_function(&h, ExtremalKind::PointMass)?;
    check_all(
        ctx,
        1,
        &specs,
        Operator::Refined(&h),
        &delta,
        "point-mass",
        None,
    )?;
    let lb = lower_bound_ratio(&h, ExtremalKind::PointMass, Target::Refined, two, two)?;
    let floor = q_power(q, lb.term);
    ctx.le(
        "rd-l2-sharpness@point-mass".into(),
        q,
        1,
        floor,
        lb.ratio,
        None,
    );
    Ok(())
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn fourier(ctx: &mut Ctx<'_>, field: &Field) -> Result<()> {
    let q = field.q();
    let h = Heisenberg::new(field, 1)?;
    let tol = ctx.cfg.tol;
    let dom = Domain::Heisenberg { n: 1 };
    let two = ExtendedExponent::int(2);

    let mut fiber_max = 0;
    for xi in field.nonzero() {
        for rho in field.elements() {
            let counts = quadratic_fiber_count(field, xi, rho)?;
            fiber_max = fiber_max.max(counts.into_iter().max().unwrap_or(0));
        }
    }
    ctx.le(
        "quadratic-fiber-max".into(),
        q,
        1,
        fiber_max as f64,
        2.0,
        None,
    );

    let mut inputs: Vec<(String, Option<usize>, GridFunction, u64)> = Vec::new();
    for t in 0..ctx.cfg.trials {
        let mut rng = ctx.rng(q, t, 0);
        let f = gaussian_function(field, dom, &mut rng);
        inputs.push(("random".into(), Some(t), f, rng.gen()));
    }
    for kind in [ExtremalKind::PointMass, ExtremalKind::Constant] {
        inputs.push((kind.name().into(), None, extremal_function(&h, kind)?, 0));
    }

    for (name, trial, f, family_seed) in &inputs {
        let family = linearize(Geometry::Refined(&h), Chooser::Random(*family_seed))?;
        let err = decomposition_error(&h, f, &family)?;
        ctx.le(
            format!("fourier-decomposition@{name}"),
            q,
            1,
            err,
            tol,
            *trial,
        );

        let table = central_fourier(&h, f)?;
        let mass = q as f64 * f.norm(two).powi(2);
        ctx.le(
            format!("plancherel@{name}"),
            q,
            1,
            rel_dev(table.energy(), mass),
            tol,
            *trial,
        );

        let back = inverse_central_fourier(&h, &table)?;
        let inv_err = back
            .values()
            .iter()
            .zip(f.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        ctx.le(
            format!("fourier-inversion@{name}"),
            q,
            1,
            inv_err,
            tol,
            *trial,
        );

        for xi in field.nonzero() {
            let (a, b) = key_counting_check(&h, &table, xi)?;
            for mut r in [a, b] {
                r.bound = format!("{}@{name}", r.bound);
                ctx.report(1, &r, *trial);
            }
            for x in field.elements() {
                let (lhs, rhs) = g_rho_identity(&h, &table, xi, x)?;
                ctx.le(
                    format!("g-rho-identity@{name}"),
                    q,
                    1,
                    rel_dev(lhs, rhs),
                    tol,
                    *trial,
                );
            }
        }
        let (zero, rest) = split_bound_check(&h, f, &family)?;
        for mut r in [zero, rest] {
            r.bound = format!("{}@{name}", r.bound);
            ctx.report(1, &r, *trial);
        }
    }

    if let Some(path) = &ctx.cfg.dump_fourier {
        let path = if ctx.cfg.qs.len() == 1 {
            path.clone()
        } else {
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("fourier");
            let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("json");
            path.with_file_name(format!("{stem}-q{q}.{ext}"))
        };
        let dump = super::io::fourier_dump(&h, &inputs[0].2)?;
        super::io::save_fourier_dump(&dump, path)?;
    }
    Ok(())
}

fn exponents(ctx: &mut Ctx<'_>) -> Result<()> {
    for plan in default_plans() {
        let limit = if plan.n == 1 {
            usize::MAX
        } else {
            SPARSE_POINT_LIMIT / 4
        };
        let qs: Vec<u32> = plan
            .fit_qs(&ctx.cfg.qs)
            .into_iter()
            .filter(|&q| (q as usize).saturating_pow(2 * plan.n as u32 + 1) <= limit)
            .collect();
        if qs.len() < 3 {
            ctx.skip(format!("{} (fewer than 3 usable q)", plan.label()));
            continue;
        }
        let modulus = if plan.large_q {
            None
        } else {
            ctx.cfg.modulus.as_deref()
        };
        let res = sweep_plan(&plan, &qs, modulus)?;
        let dev = res.deviation();
        ctx.sink.push(Row {
            suite: ctx.suite.name().into(),
            bound: format!("slope:{}", plan.label()),
            q: *qs.last().expect("nonempty"),
            n: plan.n,
            u: Some(plan.u),
            v: Some(plan.v),
            lhs: res.slope,
            rhs: res.term.to_f64().unwrap_or(f64::NAN),
            ratio: dev / SLOPE_TOL,
            holds: dev <= SLOPE_TOL,
            seed: ctx.cfg.seed,
            trial: None,
        });
    }
    Ok(())
}

/// The formula term a test function is designed to force.
pub(crate) fn designated_term(
    kind: ExtremalKind,
    target: Target,
    n: usize,
    u: ExtendedExponent,
    v: ExtendedExponent,
) -> Option<Rational64> {
    let a = exponent_a_terms(n, u, v);
    let r = exponent_ard_terms(u, v);
    match (target, kind) {
        (Target::Heisenberg, ExtremalKind::PointMass) => Some(a[0]),
        (Target::Heisenberg, ExtremalKind::SingleLine) => Some(a[1]),
        (Target::Heisenberg, ExtremalKind::Bush) => Some(a[2]),
        (Target::Refined, ExtremalKind::PointMass) => Some(r[0]),
        (Target::Refined, ExtremalKind::SingleLine) => Some(r[1]),
        (Target::Refined, ExtremalKind::TwoLinesBlocking) => Some(r[2]),
        (Target::Refined, ExtremalKind::Constant) => Some(r[3]),
        _ => None,
    }
}

fn lower_bounds(ctx: &mut Ctx<'_>, field: &Field) -> Result<()> {
    use ExtremalKind::*;
    let q = field.q();
    let e = ExtendedExponent::int;
    let exps = [e(1), e(2), e(3), e(4), ExtendedExponent::Infinite];
    let mut groups = vec![(
        1,
        Target::Refined,
        vec![PointMass, SingleLine, TwoLinesBlocking, Constant],
    )];
    groups.push((1, Target::Heisenberg, vec![PointMass, SingleLine, Bush]));
    if ctx.cfg.n > 1 {
        groups.push((
            ctx.cfg.n,
            Target::Heisenberg,
            vec![PointMass, SingleLine, Bush],
        ));
    }
    for (n, target, kinds) in groups {
        let h = Heisenberg::new(field, n)?;
        if h.num_points() > SPARSE_POINT_LIMIT {
            ctx.skip(format!(
                "lower bounds for q = {q}, n = {n} (too many points)"
            ));
            continue;
        }
        for &kind in &kinds {
            for &u in &exps {
                for &v in &exps {
                    let lb = lower_bound_ratio(&h, kind, target, u, v)?;
                    let designated = designated_term(kind, target, n, u, v) == Some(lb.term);
                    let (lhs, rhs) = match &lb.exact {
                        Some(c) => (c.threshold as f64, c.output as f64),
                        None => (lb.floor, lb.ratio),
                    };
                    let op = match target {
                        Target::Heisenberg => format!("heis-n{n}"),
                        Target::Refined => "refined".into(),
                    };
                    let ratio = if rhs > 0.0 { lhs / rhs } else { f64::INFINITY };
                    ctx.sink.push(Row {
                        suite: ctx.suite.name().into(),
                        bound: format!("lower-bound:{op}:{}", kind.name()),
                        q,
                        n,
                        u: Some(u),
                        v: Some(v),
                        lhs,
                        rhs,
                        ratio,
                        holds: designated && lb.certifies(ctx.cfg.tol),
                        seed: ctx.cfg.seed,
                        trial: None,
                    });
                }
            }
        }
    }
    Ok(())
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn examples(ctx: &mut Ctx<'_>, field: &Field) -> Result<()> {
    let q = field.q();
    let h = Heisenberg::new(field, 1)?;
    let space = AffineSpace::new(field, 3)?;
    let vertical = space.directions().len() - 1;

    let omega0 = h.refined_direction_at(0)?;
    let e1 = example_affine_not_refined(&h, &omega0)?;
    let qf = q as f64;
    ctx.eq(
        "ex-affine-not-refined:size".into(),
        q,
        1,
        e1.len() as f64,
        qf * qf * qf - qf,
    );
    let aff = is_affine_kakeya(&space, &e1)?;
    ctx.eq(
        "ex-affine-not-refined:affine-kakeya".into(),
        q,
        1,
        flag(aff.holds),
        1.0,
    );
    let rd = is_full_refined_kakeya(&h, &e1)?;
    let witnessed = !rd.holds && rd.missing.contains(&omega0.index);
    ctx.eq(
        "ex-affine-not-refined:refined-witness".into(),
        q,
        1,
        flag(witnessed),
        1.0,
    );

    if field.is_odd() && q > 3 {
        let e2 = example_refined_not_affine(&h)?;
        let rd = is_full_refined_kakeya(&h, &e2)?;
        ctx.eq(
            "ex-refined-not-affine:full-refined".into(),
            q,
            1,
            flag(rd.holds),
            1.0,
        );
        let aff = is_affine_kakeya(&space, &e2)?;
        let witnessed = !aff.holds && aff.missing.contains(&vertical);
        ctx.eq(
            "ex-refined-not-affine:vertical-witness".into(),
            q,
            1,
            flag(witnessed),
            1.0,
        );
        let fiber = max_vertical_fiber(&e2) as f64;
        ctx.le(
            "ex-refined-not-affine:max-fiber".into(),
            q,
            1,
            fiber,
            (qf + 3.0) / 2.0,
            None,
        );
    }

    let three = ExtendedExponent::int(3);
    let lb = lower_bound_ratio(&h, ExtremalKind::Constant, Target::Refined, three, three)?;
    ctx.le(
        "ex-constant-l3-sharpness".into(),
        q,
        1,
        q_power(q, lb.term),
        lb.ratio,
        None,
    );
    ctx.row(
        "ex-constant-l3-ratio".into(),
        q,
        1,
        lb.ratio,
        (qf * qf + qf).cbrt(),
        rel_dev(lb.ratio, (qf * qf + qf).cbrt()) <= 1e-12,
        None,
    );

    if field.is_odd() {
        let eta = anisotropic_eta(field)?;
        let par = extremal_function(&h, ExtremalKind::Paraboloid { eta })?;
        let plane = AffineSpace::new(field, 2)?;
        let g = project_aggregate(&h, &par, ExtendedExponent::int(1))?;
        let m2 = affine_max_op(&plane, &g)?;
        let dev = m2.iter().map(|&x| (x - qf).abs()).fold(0.0, f64::max);
        ctx.row(
            "paraboloid:planar-max-is-q".into(),
            q,
            1,
            dev,
            0.0,
            dev == 0.0,
            None,
        );
        let mh = heis_max_op(&h, &par)?;
        let top = mh.iter().cloned().fold(0.0, f64::max);
        ctx.le("paraboloid:heis-max-at-most-2".into(), q, 1, top, 2.0, None);

        // With a plain nonsquare eta the form is isotropic when -1 is a
        // nonsquare, and some horizontal line lies inside the surface.
        let ns = field.first_nonsquare()?;
        let isotropic = field.is_square(field.neg(ns))?;
        let surface = paraboloid_surface(&h, ns)?.indicator();
        let top = heis_max_op(&h, &surface)?
            .iter()
            .cloned()
            .fold(0.0, f64::max);
        let (expected, holds) = if isotropic {
            (qf, top == qf)
        } else {
            (2.0, top <= 2.0)
        };
        ctx.row(
            "paraboloid:nonsquare-eta-max".into(),
            q,
            1,
            top,
            expected,
            holds,
            None,
        );
    }
    Ok(())
}

/// A set containing `count` random full lines of distinct refined
/// directions plus sparse noise, with the planted directions.
pub(crate) fn planted_set(
    h: &Heisenberg,
    rng: &mut impl Rng,
    noise: f64,
) -> Result<(PointSet, Vec<usize>)> {
    let f = h.field();
    let total = h.num_refined_directions();
    let count = rng.gen_range(1..=total);
    let mut dirs = sample(rng, total, count).into_vec();
    dirs.sort_unstable();
    let mut set = PointSet::empty(f, Domain::Heisenberg { n: 1 });
    for &w in &dirs {
        let omega = h.refined_direction_at(w)?;
        let tau = f.elem(rng.gen_range(0..f.order()));
        for p in h.refined_line(&omega, tau)?.points {
            set.insert(p)?;
        }
    }
    for p in 0..h.num_points() {
        if rng.gen_bool(noise) {
            set.insert(p)?;
        }
    }
    Ok((set, dirs))
}

/// A named set, its trial, and an optional planted direction list.
type SizeCase = (String, Option<usize>, PointSet, Option<Vec<usize>>);

fn structured_sets(h: &Heisenberg) -> Result<Vec<(&'static str, PointSet)>> {
    use ExtremalKind::*;
    let field = h.field();
    let mut sets = vec![
        ("full", PointSet::full(field, Domain::Heisenberg { n: 1 })),
        ("single-line", extremal_set(h, SingleLine)?),
        ("bush", extremal_set(h, Bush)?),
        ("two-lines-blocking", extremal_set(h, TwoLinesBlocking)?),
        (
            "affine-not-refined",
            example_affine_not_refined(h, &h.refined_direction_at(0)?)?,
        ),
    ];
    if field.is_odd() {
        sets.push((
            "paraboloid",
            extremal_set(
                h,
                Paraboloid {
                    eta: anisotropic_eta(field)?,
                },
            )?,
        ));
        if field.q() > 3 {
            sets.push(("refined-not-affine", example_refined_not_affine(h)?));
        }
    }
    Ok(sets)
}

fn kakeya_bounds(ctx: &mut Ctx<'_>, field: &Field) -> Result<()> {
    let q = field.q();
    let h = Heisenberg::new(field, 1)?;
    let all: Vec<usize> = (0..h.num_refined_directions()).collect();
    let mut cases: Vec<SizeCase> = structured_sets(&h)?
        .into_iter()
        .map(|(name, s)| (name.to_string(), None, s, None))
        .collect();
    for t in 0..ctx.cfg.trials {
        let mut rng = ctx.rng(q, t, 0);
        let (set, dirs) = planted_set(&h, &mut rng, 0.05)?;
        cases.push(("planted".into(), Some(t), set, Some(dirs)));
    }
    let e = ExtendedExponent::int;
    for (name, trial, set, planted) in cases {
        let rep = omega_partition(&h, &set)?;
        let mut checks = vec![
            ("omega1", rep.omega1.clone(), q as u64),
            ("all", all.clone(), rep.m),
        ];
        if let Some(dirs) = planted {
            checks.push(("planted", dirs, q as u64));
        }
        for (label, omega, m) in checks {
            for (u, v) in [
                (e(2), e(2)),
                (e(3), e(3)),
                (ExtendedExponent::ratio(3, 2), e(3)),
            ] {
                let mut r = kakeya_bound_report(&h, &set, &omega, m, u, v)?.report;
                r.bound = format!("kakeya-size@{name}:{label}");
                ctx.report(1, &r, trial);
            }
        }
        // The slices partition omega_2 minus the flagged directions, with k != 0.
        let mut sliced: Vec<usize> = rep.slices.values().flatten().copied().collect();
        sliced.extend(&rep.flagged);
        sliced.sort_unstable();
        let zero_k = rep.slices.contains_key(&0);
        let bad = (sliced != rep.omega2) as usize + zero_k as usize;
        ctx.row(
            format!("slice-partition@{name}"),
            q,
            1,
            bad as f64,
            0.0,
            bad == 0,
            trial,
        );
    }
    Ok(())
}

fn moments(ctx: &mut Ctx<'_>, field: &Field) -> Result<()> {
    let q = field.q();
    let h = Heisenberg::new(field, 1)?;
    let mut cases: Vec<(String, Option<usize>, PointSet)> = structured_sets(&h)?
        .into_iter()
        .map(|(name, s)| (name.to_string(), None, s))
        .collect();
    for t in 0..ctx.cfg.trials {
        let mut rng = ctx.rng(q, t, 0);
        cases.push((
            "planted".into(),
            Some(t),
            planted_set(&h, &mut rng, 0.05)?.0,
        ));
    }
    for (name, trial, set) in cases {
        for s in [ExtendedExponent::int(2), ExtendedExponent::int(3)] {
            let mut r = moment_report(&h, &set, s)?.report;
            r.bound = format!("moment@{name}");
            ctx.report(1, &r, trial);
        }
    }
    Ok(())
}
