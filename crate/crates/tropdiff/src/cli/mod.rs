//! Command dispatch over parsed text inputs. The binary maps argv onto
//! [`Command`] and [`SessionConfig`]; everything below that line is pure
//! and exercised directly by the integration tests.

pub mod parse;

use serde_json::{json, Value};

use crate::coefficients::Valuation;
use crate::diffpoly::DiffPolynomial;
use crate::engine::{
    self, check_basis, groebner_basis, lower_bound, membership, monomial_free_window,
    reduce_basis, CheckMode, CheckOutcome, EngineError, GbResult, GbStatus, MembershipVerdict,
    MonomialFreenessReport, Provenance,
};
use crate::reduction::{reduce, ReductionStatus, ReductionTrace};
use crate::tropical::{leading, MonomialOrder, SupportProfile};
use parse::{parse_basis, parse_polynomial, parse_support, ParseError};

/// Default reduction cap, overridable per session.
pub const DEFAULT_CAP: u64 = 10_000;
/// Default round budget for the partial completion path.
pub const DEFAULT_ROUNDS: u32 = 3;

/// One invocation target with its textual inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Initial { poly: String },
    Leading { poly: String },
    Reduce { poly: String },
    Spoly { f: String, g: String },
    TrDgb { polys: Vec<String> },
    ReduceGb,
    CheckGb { bound: Option<u32> },
    Member { poly: String },
    SupportCheck,
    Bound { polys: Vec<String> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Initial { .. } => "initial",
            Command::Leading { .. } => "leading",
            Command::Reduce { .. } => "reduce",
            Command::Spoly { .. } => "spoly",
            Command::TrDgb { .. } => "trdgb",
            Command::ReduceGb => "reduce-gb",
            Command::CheckGb { .. } => "check-gb",
            Command::Member { .. } => "member",
            Command::SupportCheck => "support-check",
            Command::Bound { .. } => "bound",
        }
    }
}

/// Session-wide settings shared by every command.
#[derive(Debug, Clone)]
pub struct SessionConfig {
    /// Number of differential indeterminates; 1-based indices up to n.
    pub n: usize,
    /// Support profile text. Required by every command.
    pub support: String,
    /// Reduction step cap.
    pub cap: u64,
    /// Shift window for the monomial-freeness search.
    pub window: Option<u32>,
    /// Round budget for the partial completion path.
    pub rounds: Option<u32>,
    /// Basis file content, where the command takes one.
    pub basis: Option<String>,
    /// Emit machine-readable JSON on stdout.
    pub json: bool,
    /// Include ancestry traces in basis output.
    pub traces: bool,
}

impl SessionConfig {
    pub fn new(n: usize, support: impl Into<String>) -> Self {
        SessionConfig {
            n,
            support: support.into(),
            cap: DEFAULT_CAP,
            window: None,
            rounds: None,
            basis: None,
            json: false,
            traces: false,
        }
    }
}

/// Exit status plus both output renderings.
#[derive(Debug, Clone)]
pub struct CmdOutput {
    pub exit: i32,
    pub human: String,
    pub json: Value,
}

fn ok(command: &str, human: String, payload: Value) -> CmdOutput {
    CmdOutput {
        exit: 0,
        human,
        json: json!({"command": command, "status": "ok", "result": payload}),
    }
}

fn inconclusive(command: &str, human: String, payload: Value) -> CmdOutput {
    CmdOutput {
        exit: 2,
        human,
        json: json!({"command": command, "status": "inconclusive", "result": payload}),
    }
}

fn fail(command: &str, code: &str, message: String, span: Option<(usize, usize)>) -> CmdOutput {
    let mut err = json!({"code": code, "message": message});
    if let Some((a, b)) = span {
        err["span"] = json!([a, b]);
    }
    CmdOutput {
        exit: 1,
        human: format!("error: {}", message),
        json: json!({"command": command, "status": "error", "error": err}),
    }
}

fn parse_fail(command: &str, e: ParseError) -> CmdOutput {
    let span = match &e {
        ParseError::Syntax { span, .. }
        | ParseError::IndexOutOfRange { span, .. }
        | ParseError::ZeroDenominator { span }
        | ParseError::ZeroPeriod { span } => Some(*span),
        ParseError::ArityMismatch { .. } => None,
    };
    fail(command, e.code(), e.to_string(), span)
}

fn engine_fail(command: &str, e: EngineError) -> CmdOutput {
    let code = match &e {
        EngineError::PreconditionViolated { .. } => "precondition",
        EngineError::NotCertified => "not-certified",
        EngineError::FiniteSupport => "finite-support",
        EngineError::NonPolynomialCoefficient => "non-polynomial-coefficient",
        EngineError::NonLinearGenerator => "non-linear-generator",
        EngineError::ReductionCap => "reduction-cap",
        EngineError::Reduction(_) => "reduction",
    };
    fail(command, code, e.to_string(), None)
}

fn val_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(x) => json!(x),
        Valuation::Infinite => json!("inf"),
    }
}

fn trace_json(trace: &ReductionTrace) -> Value {
    json!({
        "quotients": trace.quotients.iter().map(|q| json!({
            "generator": q.generator,
            "shift": q.shift,
            "coefficient": q.coeff.to_string(),
            "monomial": q.monomial.to_string(),
        })).collect::<Vec<_>>(),
        "remainder": trace.remainder.to_string(),
        "steps": trace.steps,
        "status": match trace.status {
            ReductionStatus::Reduced => "reduced",
            ReductionStatus::CapReached => "cap-reached",
        },
    })
}

fn gb_status_text(status: GbStatus) -> &'static str {
    match status {
        GbStatus::CertifiedComplete => "certified-complete",
        GbStatus::BoundedOnly => "bounded-only",
        GbStatus::Failed => "failed",
    }
}

fn provenance_json(p: &Provenance) -> Value {
    match p {
        Provenance::Input(i) => json!({"input": i}),
        Provenance::SPair(t) => json!({
            "spair": {
                "left": [t.g1, t.s1],
                "right": [t.g2, t.s2],
                "left_cofactor": {
                    "coefficient": t.uf.0.to_string(),
                    "monomial": t.uf.1.to_string(),
                },
                "right_cofactor": {
                    "coefficient": t.ug.0.to_string(),
                    "monomial": t.ug.1.to_string(),
                },
                "quotients": t.quotients.iter().map(|q| json!({
                    "generator": q.generator,
                    "shift": q.shift,
                    "coefficient": q.coeff.to_string(),
                    "monomial": q.monomial.to_string(),
                })).collect::<Vec<_>>(),
                "scale": t.scale.to_string(),
            }
        }),
    }
}

fn gb_json(result: &GbResult, traces: bool) -> Value {
    let mut out = json!({
        "basis": result.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "status": gb_status_text(result.status),
        "pairs_processed": result.pairs_processed,
        "reductions_to_zero": result.reductions_to_zero,
        "parameters": result.params.map(|p| json!({
            "period": p.period,
            "spread": p.spread,
            "q": p.q,
        })).unwrap_or(Value::Null),
    });
    if traces {
        out["traces"] = Value::Array(result.provenance.iter().map(provenance_json).collect());
    }
    out
}

struct Session {
    profile: SupportProfile,
    ord: MonomialOrder,
}

fn open_session(command: &str, cfg: &SessionConfig) -> Result<Session, Box<CmdOutput>> {
    if cfg.n < 1 {
        return Err(Box::new(fail(
            command,
            "config",
            "session needs at least one variable".into(),
            None,
        )));
    }
    if cfg.cap < 1 {
        return Err(Box::new(fail(
            command,
            "config",
            "cap must be at least 1".into(),
            None,
        )));
    }
    let profile =
        parse_support(&cfg.support, cfg.n).map_err(|e| Box::new(parse_fail(command, e)))?;
    Ok(Session {
        profile,
        ord: MonomialOrder::DOrderDegLex,
    })
}

fn parse_poly_arg(
    command: &str,
    text: &str,
    cfg: &SessionConfig,
) -> Result<DiffPolynomial, Box<CmdOutput>> {
    parse_polynomial(text, cfg.n).map_err(|e| Box::new(parse_fail(command, e)))
}

fn load_basis(command: &str, cfg: &SessionConfig) -> Result<Vec<DiffPolynomial>, Box<CmdOutput>> {
    let Some(text) = &cfg.basis else {
        return Err(Box::new(fail(
            command,
            "config",
            "this command needs --basis".into(),
            None,
        )));
    };
    let basis = parse_basis(text, cfg.n).map_err(|e| Box::new(parse_fail(command, e)))?;
    if basis.is_empty() {
        return Err(Box::new(fail(
            command,
            "config",
            "basis file contains no polynomials".into(),
            None,
        )));
    }
    Ok(basis)
}

/// Certify a file-loaded basis through the bounded criterion before the
/// operations that require a complete basis.
fn certified_result(
    command: &str,
    basis: Vec<DiffPolynomial>,
    session: &Session,
) -> Result<GbResult, Box<CmdOutput>> {
    match check_basis(
        &basis,
        &session.profile,
        session.ord,
        CheckMode::LinearConstProgression,
    ) {
        Ok(CheckOutcome::Certified) => {
            let provenance = (0..basis.len()).map(Provenance::Input).collect();
            Ok(GbResult {
                basis,
                status: GbStatus::CertifiedComplete,
                pairs_processed: 0,
                reductions_to_zero: 0,
                params: None,
                provenance,
            })
        }
        Ok(_) => Err(Box::new(fail(
            command,
            "not-certified",
            "basis does not pass the completeness criterion".into(),
            None,
        ))),
        Err(e) => Err(Box::new(engine_fail(command, e))),
    }
}

/// Run one command against a session configuration.
pub fn run_command(cmd: &Command, cfg: &SessionConfig) -> CmdOutput {
    let name = cmd.name();
    let session = match open_session(name, cfg) {
        Ok(s) => s,
        Err(out) => return *out,
    };
    match cmd {
        Command::Initial { poly } => {
            let f = match parse_poly_arg(name, poly, cfg) {
                Ok(f) => f,
                Err(out) => return *out,
            };
            match crate::tropical::initial(&session.profile, &f) {
                Ok(ini) => {
                    let v = crate::tropical::val_poly(&session.profile, &f).unwrap();
                    ok(
                        name,
                        format!("{}", ini),
                        json!({"initial": ini.to_string(), "value": val_json(v)}),
                    )
                }
                Err(e) => fail(name, "tropical", e.to_string(), None),
            }
        }
        Command::Leading { poly } => {
            let f = match parse_poly_arg(name, poly, cfg) {
                Ok(f) => f,
                Err(out) => return *out,
            };
            match leading(&session.profile, session.ord, &f) {
                Ok(lead) => ok(
                    name,
                    format!("lm = {}\nlc = {}\nval = {}", lead.lm, lead.lc, lead.val),
                    json!({
                        "lm": lead.lm.to_string(),
                        "lc": lead.lc.to_string(),
                        "value": val_json(lead.val),
                    }),
                ),
                Err(e) => fail(name, "tropical", e.to_string(), None),
            }
        }
        Command::Spoly { f, g } => {
            let f = match parse_poly_arg(name, f, cfg) {
                Ok(f) => f,
                Err(out) => return *out,
            };
            let g = match parse_poly_arg(name, g, cfg) {
                Ok(g) => g,
                Err(out) => return *out,
            };
            match crate::reduction::s_polynomial(&session.profile, session.ord, &f, &g) {
                Ok(sp) => ok(name, format!("{}", sp), json!({"spoly": sp.to_string()})),
                Err(e) => fail(name, "reduction", e.to_string(), None),
            }
        }
        Command::Reduce { poly } => {
            let f = match parse_poly_arg(name, poly, cfg) {
                Ok(f) => f,
                Err(out) => return *out,
            };
            let basis = match load_basis(name, cfg) {
                Ok(b) => b,
                Err(out) => return *out,
            };
            match reduce(&session.profile, session.ord, &basis, &f, cfg.cap) {
                Ok(trace) => {
                    let human = format!(
                        "remainder = {}\nsteps = {}\nstatus = {}",
                        trace.remainder,
                        trace.steps,
                        match trace.status {
                            ReductionStatus::Reduced => "reduced",
                            ReductionStatus::CapReached => "cap-reached",
                        }
                    );
                    let payload = trace_json(&trace);
                    if trace.status == ReductionStatus::CapReached {
                        inconclusive(name, human, payload)
                    } else {
                        ok(name, human, payload)
                    }
                }
                Err(e) => fail(name, "reduction", e.to_string(), None),
            }
        }
        Command::TrDgb { polys } => {
            let mut generators = Vec::new();
            for text in polys {
                match parse_poly_arg(name, text, cfg) {
                    Ok(f) => generators.push(f),
                    Err(out) => return *out,
                }
            }
            if generators.is_empty() {
                return fail(name, "config", "no generators given".into(), None);
            }
            let linear_class =
                engine::validate_linear_const_progression(&generators, &session.profile).is_ok();
            let result = if linear_class {
                groebner_basis(&generators, &session.profile, session.ord)
            } else {
                engine::buchberger_rounds(
                    &generators,
                    &session.profile,
                    session.ord,
                    cfg.rounds.unwrap_or(DEFAULT_ROUNDS),
                    cfg.cap,
                )
            };
            match result {
                Ok(r) => {
                    let mut human = String::new();
                    for p in &r.basis {
                        human.push_str(&format!("{}\n", p));
                    }
                    human.push_str(&format!(
                        "status = {}\npairs = {}",
                        gb_status_text(r.status),
                        r.pairs_processed
                    ));
                    let payload = gb_json(&r, cfg.traces);
                    if r.status == GbStatus::CertifiedComplete {
                        ok(name, human, payload)
                    } else {
                        inconclusive(name, human, payload)
                    }
                }
                Err(e) => engine_fail(name, e),
            }
        }
        Command::ReduceGb => {
            let basis = match load_basis(name, cfg) {
                Ok(b) => b,
                Err(out) => return *out,
            };
            let result = match certified_result(name, basis, &session) {
                Ok(r) => r,
                Err(out) => return *out,
            };
            match reduce_basis(&result, &session.profile, session.ord) {
                Ok(reduced) => {
                    let human = reduced
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join("\n");
                    ok(
                        name,
                        human,
                        json!({"basis": reduced.iter().map(|p| p.to_string()).collect::<Vec<_>>()}),
                    )
                }
                Err(e) => engine_fail(name, e),
            }
        }
        Command::CheckGb { bound } => {
            let basis = match load_basis(name, cfg) {
                Ok(b) => b,
                Err(out) => return *out,
            };
            let mode = match bound {
                Some(b) => CheckMode::ExplicitBound(*b),
                None => CheckMode::LinearConstProgression,
            };
            match check_basis(&basis, &session.profile, session.ord, mode) {
                Ok(CheckOutcome::Certified) => ok(
                    name,
                    "certified".into(),
                    json!({"outcome": "certified"}),
                ),
                Ok(CheckOutcome::Refuted { pair, remainder }) => ok(
                    name,
                    format!(
                        "refuted by pair (g{} shift {}, g{} shift {}): remainder {}",
                        pair.0 .0, pair.0 .1, pair.1 .0, pair.1 .1, remainder
                    ),
                    json!({
                        "outcome": "refuted",
                        "pair": [[pair.0.0, pair.0.1], [pair.1.0, pair.1.1]],
                        "remainder": remainder.to_string(),
                    }),
                ),
                Ok(CheckOutcome::Inconclusive) => inconclusive(
                    name,
                    "inconclusive".into(),
                    json!({"outcome": "inconclusive"}),
                ),
                Err(e) => engine_fail(name, e),
            }
        }
        Command::Member { poly } => {
            let f = match parse_poly_arg(name, poly, cfg) {
                Ok(f) => f,
                Err(out) => return *out,
            };
            let basis = match load_basis(name, cfg) {
                Ok(b) => b,
                Err(out) => return *out,
            };
            let result = match certified_result(name, basis, &session) {
                Ok(r) => r,
                Err(out) => return *out,
            };
            match membership(&result, &f, &session.profile, session.ord, cfg.cap) {
                Ok(MembershipVerdict::Member(trace)) => ok(
                    name,
                    "member".into(),
                    json!({"verdict": "member", "trace": trace_json(&trace)}),
                ),
                Ok(MembershipVerdict::NotMember(rem)) => ok(
                    name,
                    format!("not a member; remainder = {}", rem),
                    json!({"verdict": "not-member", "remainder": rem.to_string()}),
                ),
                Ok(MembershipVerdict::Inconclusive(cap)) => inconclusive(
                    name,
                    format!("inconclusive at cap {}", cap),
                    json!({"verdict": "inconclusive", "cap": cap}),
                ),
                Err(e) => engine_fail(name, e),
            }
        }
        Command::SupportCheck => {
            let generators = match load_basis(name, cfg) {
                Ok(b) => b,
                Err(out) => return *out,
            };
            let window = match cfg.window {
                Some(w) => w,
                None => match default_window(&generators, &session.profile) {
                    Some(w) => w,
                    None => {
                        return fail(
                            name,
                            "config",
                            "--window is required for non-progression supports".into(),
                            None,
                        )
                    }
                },
            };
            match monomial_free_window(&generators, &session.profile, session.ord, window) {
                Ok(MonomialFreenessReport::MonomialFound {
                    witness,
                    value,
                    certificate,
                }) => ok(
                    name,
                    format!("monomial found: {} (value {})", witness, value),
                    json!({
                        "report": "monomial-found",
                        "witness": witness.to_string(),
                        "value": value,
                        "certificate": certificate.iter().map(|e| json!({
                            "generator": e.generator,
                            "shift": e.shift,
                            "multiplier": e.multiplier.to_string(),
                        })).collect::<Vec<_>>(),
                    }),
                ),
                Ok(MonomialFreenessReport::NoneInWindow { window }) => inconclusive(
                    name,
                    format!("no monomial within window {}", window),
                    json!({"report": "none-in-window", "window": window}),
                ),
                Err(e) => engine_fail(name, e),
            }
        }
        Command::Bound { polys } => {
            let generators = if polys.is_empty() {
                match load_basis(name, cfg) {
                    Ok(b) => b,
                    Err(out) => return *out,
                }
            } else {
                let mut gens = Vec::new();
                for text in polys {
                    match parse_poly_arg(name, text, cfg) {
                        Ok(f) => gens.push(f),
                        Err(out) => return *out,
                    }
                }
                gens
            };
            match lower_bound(&generators, &session.profile) {
                Ok(d) => ok(name, format!("{}", d), json!({"bound": d})),
                Err(e) => engine_fail(name, e),
            }
        }
    }
}

/// Default freeness window over progression supports: twice the period
/// lcm plus the maximal generator order. Heuristic, not a completeness
/// bound.
fn default_window(generators: &[DiffPolynomial], profile: &SupportProfile) -> Option<u32> {
    let period = profile.period_lcm()?;
    let max_ord = generators.iter().filter_map(|g| g.order()).max().unwrap_or(0);
    Some((2 * period) as u32 + max_ord)
}
