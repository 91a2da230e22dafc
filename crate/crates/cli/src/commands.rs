use std::time::Instant;

use serde_json::{json, Value};
use twistoid::algebroid::{bm_bialgebroid, bm_bialgebroid_twisted, verify_theorem, xu_twist, Bialgebroid};
use twistoid::hopf::{check_cocycle, check_quasitriangular, classical_r_extract, r_matrix_from_twist};
use twistoid::registry::{preset_spec, PRESET_NAMES};
use twistoid::residual::entry_for;
use twistoid::{CheckEntry, Coproduct, NCPoly, PresetSpec, Setup, SmashElem, Status};

use crate::expr::evaluate;
use crate::report::{Record, Report, Section};

/// Input problems: bad config, unknown names, unparsable expressions.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<twistoid::Error> for InputError {
    fn from(e: twistoid::Error) -> Self {
        InputError(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Undeformed,
    BmTwisted,
    XuTwisted,
}

impl Side {
    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "undeformed" => Some(Side::Undeformed),
            "bm-twisted" => Some(Side::BmTwisted),
            "xu-twisted" => Some(Side::XuTwisted),
            _ => None,
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            Side::Undeformed => "undeformed",
            Side::BmTwisted => "bm-twisted",
            Side::XuTwisted => "xu-twisted",
        }
    }
}

type SectionFn<'a> = Box<dyn FnOnce() -> Vec<CheckEntry> + 'a>;

/// A built problem and the run options shared by all commands.
pub struct Ctx {
    pub setup: Setup,
    pub order: usize,
    pub degree: usize,
    pub fail_fast: bool,
    pub timings: bool,
}

impl Ctx {
    pub fn new(spec: &PresetSpec, order: Option<usize>, degree: Option<usize>) -> Result<Ctx, InputError> {
        let n = order.unwrap_or(spec.order);
        let d = degree.unwrap_or(spec.degree);
        if n == 0 {
            return Err(InputError("truncation order must be at least 1".into()));
        }
        let setup = spec.build(n)?;
        Ok(Ctx { setup, order: n, degree: d, fail_fast: false, timings: false })
    }

    fn report(&self, command: &str) -> Report {
        Report::new(command, &self.setup.spec.name, self.order, self.degree)
    }

    /// Runs sections in order, stopping after the first failing one under
    /// `--fail-fast`.
    fn run_sections(&self, report: &mut Report, sections: Vec<(&str, SectionFn<'_>)>) {
        for (title, run) in sections {
            let t = Instant::now();
            let entries = run();
            let seconds = self.timings.then(|| t.elapsed().as_secs_f64());
            let records = entries.iter().map(|e| Record::from_entry(e, self.degree, self.order)).collect();
            report.push(Section { title: title.to_string(), records, seconds });
            if self.fail_fast && !report.passed() {
                break;
            }
        }
    }

    fn r_matrix(&self) -> NCPoly {
        r_matrix_from_twist(&self.setup.ma.bialg, &self.setup.twist)
    }
}

fn failure(name: &str, tag: &str, why: String) -> CheckEntry {
    CheckEntry {
        name: name.into(),
        tag: tag.into(),
        status: Status::Fail,
        samples: 1,
        residual_terms: 0,
        failing_order: None,
        witness: Some(why),
    }
}

pub fn check_twist(ctx: &Ctx) -> Report {
    let ma = &ctx.setup.ma;
    let (b, f) = (&ma.bialg, &ctx.setup.twist);
    let mut report = ctx.report("check-twist");
    let r = ctx.r_matrix();
    let classical = classical_r_extract(b, &r);
    if let Ok(c) = &classical {
        report.artifacts.insert("classical_r".into(), Value::String(c.r.display(b.rs())));
    }
    ctx.run_sections(
        &mut report,
        vec![
            ("twist", Box::new(|| check_cocycle(b, f).entries(b.rs()))),
            (
                "R-matrix R = F₂₁F⁻¹",
                Box::new(|| match check_quasitriangular(b, &r, Coproduct::Twisted(f)) {
                    Ok(q) => q.entries(b.rs()),
                    Err(e) => vec![failure("R-matrix", "qt", e.to_string())],
                }),
            ),
            (
                "classical r-matrix",
                Box::new(|| match &classical {
                    Ok(c) => vec![entry_for("classical Yang–Baxter", "cybe", &c.cybe, || c.cybe.display(b.rs()))],
                    Err(e) => vec![failure("classical Yang–Baxter", "cybe", e.to_string())],
                }),
            ),
        ],
    );
    report
}

pub fn star_table(ctx: &Ctx) -> Report {
    let ma = &ctx.setup.ma;
    let f = &ctx.setup.twist;
    let mut report = ctx.report("star-table");
    let coords = ma.rep.coords();
    let table = ma.star_commutator_table(Some(f));
    let mut lines = Vec::new();
    for (mu, row) in table.iter().enumerate() {
        for (nu, c) in row.iter().enumerate() {
            if mu < nu {
                lines.push(Value::String(format!("[{}, {}]⋆ = {}", coords[mu], coords[nu], c.display(coords))));
            }
        }
    }
    report.artifacts.insert("star_commutators".into(), Value::Array(lines));
    let r = ctx.r_matrix();
    ctx.run_sections(
        &mut report,
        vec![("braided commutativity", Box::new(|| vec![ma.check_braided_commutativity(Some(f), &r, ctx.degree)]))],
    );
    report
}

/// `smash-verify`; with `corrupt_phi` the second leg of `F⁻¹` is dropped from
/// `φ`, which must be caught.
pub fn smash_verify(ctx: &Ctx, corrupt_phi: bool) -> Report {
    let ma = &ctx.setup.ma;
    let f = &ctx.setup.twist;
    let mut report = ctx.report("smash-verify");
    let small = ma.spanning_set(1);
    let span = ma.spanning_set(ctx.degree);
    let mut triples = Vec::new();
    for u in &small {
        for v in &span {
            for w in &small {
                triples.push((u.clone(), v.clone(), w.clone()));
            }
        }
    }
    let corrupted = |u: &SmashElem| {
        let mut out = SmashElem::zero(u.order());
        for (l, a) in u.by_word() {
            for (x1, _, c) in f.f_inv_terms() {
                let xa = ma.rep.act_word(x1, &a).scale(c);
                out.add_assign(&SmashElem::from_poly_word(&xa, &l));
            }
        }
        out
    };
    let honest = |u: &SmashElem| ma.phi(f, u);
    ctx.run_sections(
        &mut report,
        vec![
            ("module algebra", Box::new(|| ma.check_module_algebra(ctx.degree))),
            (
                "associativity",
                Box::new(|| vec![ma.check_smash_associativity(None, &triples), ma.check_smash_associativity(Some(f), &triples)]),
            ),
            (
                "φ: A_F⋊H^F → A⋊H",
                Box::new(move || {
                    if corrupt_phi {
                        ma.verify_phi_homomorphism_with(f, ctx.degree, &corrupted)
                    } else {
                        ma.verify_phi_homomorphism_with(f, ctx.degree, &honest)
                    }
                }),
            ),
        ],
    );
    report
}

pub fn algebroid_verify(ctx: &Ctx, side: Side) -> Report {
    let ma = &ctx.setup.ma;
    let f = &ctx.setup.twist;
    let d = ctx.degree;
    let mut report = ctx.report(&format!("algebroid-verify --side {}", side.as_str()));
    let built: Result<Bialgebroid<'_>, twistoid::Error> = match side {
        Side::Undeformed => bm_bialgebroid(ma, &ma.bialg.one(), d),
        Side::BmTwisted => bm_bialgebroid_twisted(ma, f, d),
        Side::XuTwisted => bm_bialgebroid(ma, &ma.bialg.one(), d).and_then(|p| xu_twist(p, f)),
    };
    let bd = match built {
        Ok(bd) => bd,
        Err(e) => {
            ctx.run_sections(&mut report, vec![("construction", Box::new(|| vec![failure("construction", "bm2", e.to_string())]))]);
            return report;
        }
    };
    let r = match side {
        Side::Undeformed => ma.bialg.one(),
        _ => ctx.r_matrix(),
    };
    let witness_lines = std::cell::RefCell::new(None);
    ctx.run_sections(
        &mut report,
        vec![
            ("bialgebroid axioms", Box::new(|| bd.check_axioms(d))),
            ("closed forms", Box::new(|| bd.check_explicit_forms(d))),
            (
                "shifted R-matrix R̃ = (1⋊R₁)⊗(1⋊R₂)",
                Box::new(|| match bd.check_qt_shifted(&r, d) {
                    Ok(q) => {
                        *witness_lines.borrow_mut() = Some(q.witness_found);
                        q.entries
                    }
                    Err(e) => vec![failure("shifted R-matrix", "qt1", e.to_string())],
                }),
            ),
        ],
    );
    if let Some(w) = witness_lines.into_inner() {
        report.artifacts.insert("qt2_witness_found".into(), json!(w));
    }
    report
}

pub fn theorem(ctx: &Ctx) -> Report {
    let mut report = ctx.report("theorem");
    let t = Instant::now();
    let rep = verify_theorem(&ctx.setup.ma, &ctx.setup.twist, ctx.degree);
    let seconds = ctx.timings.then(|| t.elapsed().as_secs_f64());
    for (title, entries) in &rep.steps {
        let records = entries.iter().map(|e| Record::from_entry(e, ctx.degree, ctx.order)).collect();
        report.push(Section { title: title.clone(), records, seconds: None });
        if ctx.fail_fast && !report.passed() {
            break;
        }
    }
    if let Some(s) = seconds {
        report.artifacts.insert("seconds".into(), json!(s));
    }
    report
}

pub fn commutator(ctx: &Ctx, lhs: &str, rhs: &str, undeformed: bool) -> Result<Report, InputError> {
    let ma = &ctx.setup.ma;
    let f = (!undeformed).then_some(&ctx.setup.twist);
    let a = evaluate(lhs, ma, f).map_err(|e| InputError(format!("in `{lhs}`: {e}")))?;
    let b = evaluate(rhs, ma, f).map_err(|e| InputError(format!("in `{rhs}`: {e}")))?;
    let c = ma.smash_mul(f, &a, &b).sub(&ma.smash_mul(f, &b, &a));
    let (coords, rs) = (ma.rep.coords(), ma.bialg.rs());
    let mut report = ctx.report("commutator");
    report.artifacts.insert("product".into(), Value::String(if undeformed { "A⋊H" } else { "A_F⋊H^F" }.into()));
    report.artifacts.insert("lhs".into(), Value::String(a.display(coords, rs)));
    report.artifacts.insert("rhs".into(), Value::String(b.display(coords, rs)));
    report.artifacts.insert("commutator".into(), Value::String(c.display(coords, rs)));
    Ok(report)
}

pub fn presets_list() -> Report {
    let mut report = Report::new("presets list", "-", 0, 0);
    let rows = PRESET_NAMES
        .iter()
        .map(|n| {
            let s = preset_spec(n).expect("shipped preset");
            Value::String(format!("{:<13} N={} d={}  {}", s.name, s.order, s.degree, s.description))
        })
        .collect();
    report.artifacts.insert("presets".into(), Value::Array(rows));
    report
}

pub fn presets_validate(names: &[String], order: Option<usize>) -> Result<Report, InputError> {
    let mut report = Report::new("presets validate", "-", order.unwrap_or(0), 0);
    for name in names {
        let spec = preset_spec(name)?;
        let n = order.unwrap_or(spec.order);
        let records = spec.validation_entries(n).iter().map(|e| Record::from_entry(e, 0, n)).collect();
        report.push(Section { title: format!("{name} at N={n}"), records, seconds: None });
    }
    Ok(report)
}

/// Runs the suites listed under `checks` in the config, in order.
pub fn run_listed(ctx: &Ctx) -> Result<Report, InputError> {
    let checks = &ctx.setup.spec.checks;
    if checks.is_empty() {
        return Err(InputError("config lists no checks to run".into()));
    }
    let mut report = ctx.report("run");
    for name in checks {
        let sub = match name.as_str() {
            "check-twist" => check_twist(ctx),
            "star-table" => star_table(ctx),
            "smash-verify" => smash_verify(ctx, false),
            "theorem" => theorem(ctx),
            other => match other.strip_prefix("algebroid-verify:").and_then(Side::parse) {
                Some(side) => algebroid_verify(ctx, side),
                None => return Err(InputError(format!("unknown check `{other}`"))),
            },
        };
        for mut s in sub.sections {
            s.title = format!("{name}: {}", s.title);
            report.push(s);
        }
        for (k, v) in sub.artifacts {
            report.artifacts.insert(format!("{name}.{k}"), v);
        }
        if ctx.fail_fast && !report.passed() {
            break;
        }
    }
    Ok(report)
}
