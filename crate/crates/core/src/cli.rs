//! Command-line front end: `VERB GROUP ARGS... [--json] [--seed N] [--box N]`.
//!
//! Parsing resolves every argument against the group, so a [`Command`] only
//! holds valid objects. Output is a list of `key: value` lines, or one JSON
//! object with the same keys under `--json`.

use std::cmp::Ordering;
use std::fmt;

use clap::Parser;
use serde_json::{Map, Value as Json};

use crate::cuts::{Cut, CutSide};
use crate::dsl::{self, DslError, GroupExpr, MorphismSpec, SyntaxError};
use crate::error::{Error, Result};
use crate::hahnomega::{OmegaCut, OmegaElement, OmegaGroup};
use crate::lexgroups::{GroupElement, LexGroup};
use crate::oracle::{self, Sampler, DEFAULT_BOX, DEFAULT_SEED};
use crate::ordsets;
use crate::scalars::RankOneKind;

/// Samples used by the invariance falsifier in `invariance`.
pub const ORACLE_SAMPLES: usize = 40;
/// Random candidates tried per falsifier call.
pub const ORACLE_EXTRA: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verb {
    Classify,
    Invariance,
    Member,
    Compare,
    Translate,
    Project,
    Trace,
    Transport,
    Bounds,
    Push,
    Pull,
    Skeleton,
    Embed,
    ConvexSubgroups,
    Discreteness,
    Hull,
    Orders,
}

impl Verb {
    pub const ALL: [Verb; 17] = [
        Verb::Classify,
        Verb::Invariance,
        Verb::Member,
        Verb::Compare,
        Verb::Translate,
        Verb::Project,
        Verb::Trace,
        Verb::Transport,
        Verb::Bounds,
        Verb::Push,
        Verb::Pull,
        Verb::Skeleton,
        Verb::Embed,
        Verb::ConvexSubgroups,
        Verb::Discreteness,
        Verb::Hull,
        Verb::Orders,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verb::Classify => "classify",
            Verb::Invariance => "invariance",
            Verb::Member => "member",
            Verb::Compare => "compare",
            Verb::Translate => "translate",
            Verb::Project => "project",
            Verb::Trace => "trace",
            Verb::Transport => "transport",
            Verb::Bounds => "bounds",
            Verb::Push => "push",
            Verb::Pull => "pull",
            Verb::Skeleton => "skeleton",
            Verb::Embed => "embed",
            Verb::ConvexSubgroups => "convex-subgroups",
            Verb::Discreteness => "discreteness",
            Verb::Hull => "hull",
            Verb::Orders => "orders",
        }
    }

    pub fn from_name(s: &str) -> Option<Verb> {
        Verb::ALL.into_iter().find(|v| v.name() == s)
    }

    /// Argument slots for a finite lex product.
    fn lex_slots(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            Verb::Classify => &[Cut],
            Verb::Invariance => &[Cut, OptElement],
            Verb::Member | Verb::Translate | Verb::Bounds => &[Cut, Element],
            Verb::Compare => &[Cut, Cut],
            Verb::Project => &[Cut, Level],
            Verb::Trace => &[Cut, Level, OptElement],
            Verb::Transport => &[Cut, Level, Level],
            Verb::Push => &[Morphism, Cut],
            Verb::Pull => &[Morphism, CodCut],
            Verb::Embed => &[Element],
            Verb::Skeleton | Verb::ConvexSubgroups | Verb::Discreteness | Verb::Hull | Verb::Orders => &[],
        }
    }

    /// Argument slots for an ω-sum, or `None` when the verb needs finite rank.
    fn omega_slots(self) -> Option<&'static [Slot]> {
        use Slot::*;
        Some(match self {
            Verb::Classify => &[Cut],
            Verb::Invariance => &[Cut, OptElement],
            Verb::Member | Verb::Translate => &[Cut, Element],
            Verb::Embed => &[Element],
            Verb::Skeleton | Verb::ConvexSubgroups | Verb::Discreteness | Verb::Hull => &[],
            _ => return None,
        })
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Cut,
    /// A cut of the codomain of the preceding morphism.
    CodCut,
    Element,
    OptElement,
    Level,
    Morphism,
}

impl Slot {
    fn describe(self) -> &'static str {
        match self {
            Slot::Cut | Slot::CodCut => "cut",
            Slot::Element | Slot::OptElement => "element",
            Slot::Level => "level",
            Slot::Morphism => "morphism",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    Cut(Cut),
    Anchor(OmegaCut),
    Element(GroupElement),
    OmegaElement(OmegaElement),
    Level(usize),
    Morphism(MorphismSpec),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Cut(c) => c.fmt(f),
            Arg::Anchor(a) => a.fmt(f),
            Arg::Element(x) => x.fmt(f),
            Arg::OmegaElement(x) => x.fmt(f),
            Arg::Level(m) => write!(f, "C {m}"),
            Arg::Morphism(m) => m.fmt(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Flags {
    pub json: bool,
    pub seed: u64,
    pub box_bound: i64,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            json: false,
            seed: DEFAULT_SEED,
            box_bound: DEFAULT_BOX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub group: GroupExpr,
    pub args: Vec<Arg>,
    pub flags: Flags,
}

/// Why a command line was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input. Exit code 1.
    Syntax(String),
    /// Well-formed input violating a domain rule. Exit code 2.
    Domain(Error),
    /// `--help` or `--version`; the text goes to stdout with exit code 0.
    Info(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Syntax(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax(m) | CliError::Info(m) => f.write_str(m),
            CliError::Domain(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ordcut",
    version,
    about = "Exact cut calculus for lexicographic products of rank-one groups",
    after_help = "Verbs: classify, invariance, member, compare, translate, project, trace, \
                  transport, bounds, push, pull, skeleton, embed, convex-subgroups, \
                  discreteness, hull, orders"
)]
struct RawArgs {
    /// Operation to run.
    verb: String,
    /// Group expression, e.g. lex(Z,Q) or hahn_omega(Z).
    group: String,
    /// Verb-specific arguments.
    args: Vec<String>,
    /// Print one JSON object instead of key: value lines.
    #[arg(long)]
    json: bool,
    /// Seed for randomized oracles.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Coordinate bound for randomized oracles.
    #[arg(long = "box", default_value_t = DEFAULT_BOX)]
    box_bound: i64,
}

fn located(what: &str, index: usize, e: DslError) -> CliError {
    match e {
        DslError::Syntax(SyntaxError { position, message }) => CliError::Syntax(format!(
            "syntax error in argument {index} ({what}) at column {}: {message}",
            position + 1
        )),
        DslError::Domain(e) => CliError::Domain(e),
    }
}

impl Command {
    /// Parses the arguments after the program name.
    pub fn from_args<I, S>(args: I) -> std::result::Result<Command, CliError>
    where
        I: IntoIterator<Item = S>,
        S: Into<std::ffi::OsString> + Clone,
    {
        let argv = std::iter::once(std::ffi::OsString::from("ordcut")).chain(args.into_iter().map(Into::into));
        let raw = RawArgs::try_parse_from(argv).map_err(|e| match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                CliError::Info(e.to_string())
            }
            _ => CliError::Syntax(e.to_string().trim_end().to_string()),
        })?;
        if raw.box_bound < 1 {
            return Err(CliError::Domain(Error::Precondition(format!(
                "--box must be positive, got {}",
                raw.box_bound
            ))));
        }
        let verb = Verb::from_name(&raw.verb)
            .ok_or_else(|| CliError::Syntax(format!("unknown verb '{}'", raw.verb)))?;
        let group = dsl::parse_group(&raw.group).map_err(|e| located("group", 1, e))?;
        let slots = match &group {
            GroupExpr::Lex(_) => verb.lex_slots(),
            GroupExpr::Omega(g) => verb.omega_slots().ok_or_else(|| {
                CliError::Domain(Error::Unsupported(format!("{verb} needs a finite lex product, not {g}")))
            })?,
        };
        let required = slots.iter().filter(|s| **s != Slot::OptElement).count();
        if raw.args.len() < required || raw.args.len() > slots.len() {
            let expected: Vec<&str> = slots.iter().map(|s| s.describe()).collect();
            return Err(CliError::Syntax(format!(
                "{verb} takes arguments ({}), got {}",
                expected.join(", "),
                raw.args.len()
            )));
        }
        let mut args = Vec::new();
        for (i, (slot, text)) in slots.iter().zip(&raw.args).enumerate() {
            let pos = i + 2;
            let what = slot.describe();
            let arg = match (&group, slot) {
                (GroupExpr::Lex(g), Slot::Cut) => Arg::Cut(dsl::parse_cut(g, text).map_err(|e| located(what, pos, e))?),
                (GroupExpr::Lex(g), Slot::CodCut) => {
                    let Some(Arg::Morphism(m)) = args.last() else {
                        unreachable!("a codomain cut follows a morphism")
                    };
                    let cod = m.resolve(g)?.cod().clone();
                    Arg::Cut(dsl::parse_cut(&cod, text).map_err(|e| located(what, pos, e))?)
                }
                (GroupExpr::Lex(g), Slot::Element | Slot::OptElement) => {
                    Arg::Element(dsl::parse_element(g, text).map_err(|e| located(what, pos, e))?)
                }
                (GroupExpr::Omega(g), Slot::Cut) => {
                    Arg::Anchor(dsl::parse_anchor(*g, text).map_err(|e| located(what, pos, e))?)
                }
                (GroupExpr::Omega(g), Slot::Element | Slot::OptElement) => {
                    Arg::OmegaElement(dsl::parse_omega_element(*g, text).map_err(|e| located(what, pos, e))?)
                }
                (_, Slot::Level) => Arg::Level(dsl::parse_level(text).map_err(|e| located(what, pos, e))?),
                (GroupExpr::Lex(g), Slot::Morphism) => {
                    let m = dsl::parse_morphism(text).map_err(|e| located(what, pos, e))?;
                    m.resolve(g)?;
                    Arg::Morphism(m)
                }
                (GroupExpr::Omega(_), _) => unreachable!("ω-sum slots are cuts, elements and levels"),
            };
            args.push(arg);
        }
        Ok(Command {
            verb,
            group,
            args,
            flags: Flags {
                json: raw.json,
                seed: raw.seed,
                box_bound: raw.box_bound,
            },
        })
    }

    /// Parses a shell-quoted command line without the program name.
    pub fn parse_line(line: &str) -> std::result::Result<Command, CliError> {
        let words = shlex::split(line).ok_or_else(|| CliError::Syntax("unbalanced quotes".into()))?;
        Command::from_args(words)
    }

    /// The shell-quoted words of the command; defaults are omitted.
    pub fn words(&self) -> Vec<String> {
        let mut out = vec![self.verb.to_string(), self.group.to_string()];
        out.extend(self.args.iter().map(|a| a.to_string()));
        if self.flags.json {
            out.push("--json".into());
        }
        if self.flags.seed != DEFAULT_SEED {
            out.push("--seed".into());
            out.push(self.flags.seed.to_string());
        }
        if self.flags.box_bound != DEFAULT_BOX {
            out.push("--box".into());
            out.push(self.flags.box_bound.to_string());
        }
        out
    }

    pub fn execute(&self) -> Result<Output> {
        let mut out = Output::default();
        let mut sampler = Sampler::new(self.flags.seed, self.flags.box_bound);
        match &self.group {
            GroupExpr::Lex(g) => run_lex(self.verb, g, &self.args, &mut sampler, &mut out)?,
            GroupExpr::Omega(g) => run_omega(self.verb, *g, &self.args, self.flags.box_bound, &mut out)?,
        }
        Ok(out)
    }

    /// Executes and renders according to `--json`.
    pub fn run(&self) -> Result<String> {
        Ok(self.execute()?.render(self.flags.json))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .words()
            .iter()
            .map(|w| shlex::try_quote(w).map(|q| q.into_owned()).unwrap_or_else(|_| w.clone()))
            .collect();
        f.write_str(&words.join(" "))
    }
}

/// A field value of the output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Str(String),
    Int(u64),
    Bool(bool),
    List(Vec<String>),
    None,
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Str(s) => s.clone(),
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::List(items) => items.join(", "),
            Value::None => "none".into(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Str(s) => Json::String(s.clone()),
            Value::Int(n) => Json::from(*n),
            Value::Bool(b) => Json::Bool(*b),
            Value::List(items) => Json::Array(items.iter().cloned().map(Json::String).collect()),
            Value::None => Json::Null,
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> Value {
    v.map_or(Value::None, |x| Value::Str(x.to_string()))
}

fn s(v: impl ToString) -> Value {
    Value::Str(v.to_string())
}

fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::List(items.into_iter().map(|x| x.to_string()).collect())
}

/// Ordered `key: value` fields.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub fields: Vec<(String, Value)>,
}

impl Output {
    fn put(&mut self, key: &str, value: Value) {
        self.fields.push((key.to_string(), value));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| format!("{k}: {}\n", v.text()))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Json> = self.fields.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        let mut text = Json::Object(map).to_string();
        text.push('\n');
        text
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn cut_arg(args: &[Arg], i: usize) -> &Cut {
    match &args[i] {
        Arg::Cut(c) => c,
        other => unreachable!("slot {i} holds {other:?}"),
    }
}

fn element_arg(args: &[Arg], i: usize) -> Option<&GroupElement> {
    match args.get(i) {
        Some(Arg::Element(x)) => Some(x),
        None => None,
        Some(other) => unreachable!("slot {i} holds {other:?}"),
    }
}

fn level_arg(args: &[Arg], i: usize) -> usize {
    match &args[i] {
        Arg::Level(m) => *m,
        other => unreachable!("slot {i} holds {other:?}"),
    }
}

fn morphism_arg(args: &[Arg], i: usize) -> &MorphismSpec {
    match &args[i] {
        Arg::Morphism(m) => m,
        other => unreachable!("slot {i} holds {other:?}"),
    }
}

fn side_name(side: CutSide) -> &'static str {
    match side {
        CutSide::MinusSide => "minus",
        CutSide::PlusSide => "plus",
    }
}

fn put_cut(out: &mut Output, cut: &Cut) {
    out.put("result_cut", s(cut));
    out.put("result_group", s(cut.group()));
    out.put("type", s(cut.classify()));
    out.put("invariance_level", Value::Int(cut.invariance().level() as u64));
}

fn run_lex(verb: Verb, g: &LexGroup, args: &[Arg], sampler: &mut Sampler, out: &mut Output) -> Result<()> {
    match verb {
        Verb::Classify => {
            let c = cut_arg(args, 0);
            out.put("type", s(c.classify()));
            out.put("invariance_level", Value::Int(c.invariance().level() as u64));
        }
        Verb::Invariance => {
            let c = cut_arg(args, 0);
            let level = c.invariance().level();
            out.put("invariance_level", Value::Int(level as u64));
            out.put("invariance", s(c.invariance()));
            if !c.is_trivial() {
                let check = oracle::check_invariance(c, level, sampler, ORACLE_SAMPLES, ORACLE_EXTRA)?;
                out.put("oracle_agrees", Value::Bool(check.agrees()));
            }
            if let Some(x) = element_arg(args, 1) {
                out.put("witness", opt(oracle::find_witness(c, x, sampler, ORACLE_EXTRA * 4)?));
            }
        }
        Verb::Member => {
            let c = cut_arg(args, 0);
            let x = element_arg(args, 1).expect("required");
            out.put("side", s(side_name(c.member(x)?)));
        }
        Verb::Compare => {
            let o = cut_arg(args, 0).compare(cut_arg(args, 1))?;
            out.put("result", s(ordering_name(o)));
        }
        Verb::Translate => {
            let c = cut_arg(args, 0);
            let x = element_arg(args, 1).expect("required");
            put_cut(out, &c.translate(x)?);
        }
        Verb::Project => {
            let c = cut_arg(args, 0);
            let theta = g.convex_subgroup(level_arg(args, 1))?;
            put_cut(out, &c.quotient_image(&theta)?);
        }
        Verb::Trace => {
            let c = cut_arg(args, 0);
            let theta = g.convex_subgroup(level_arg(args, 1))?;
            let traced = match element_arg(args, 2) {
                Some(offset) => c.trace_at(&theta, offset)?,
                None => c.trace(&theta)?,
            };
            put_cut(out, &traced);
        }
        Verb::Transport => {
            let c = cut_arg(args, 0);
            let theta1 = g.convex_subgroup(level_arg(args, 1))?;
            let theta2 = g.convex_subgroup(level_arg(args, 2))?;
            let moved = c.transport(&theta1, &theta2)?;
            out.put("source_type", s(c.classify()));
            put_cut(out, &moved);
        }
        Verb::Bounds => {
            let c = cut_arg(args, 0);
            let x = element_arg(args, 1).expect("required");
            let (segment, b) = match c.member(x)? {
                CutSide::MinusSide => ("initial", c.interval_bounds(x)?),
                CutSide::PlusSide => ("final", c.interval_bounds_final(x)?),
            };
            out.put("side", s(side_name(c.member(x)?)));
            out.put("segment", s(segment));
            out.put("psi_minus", s(b.psi_minus));
            out.put("phi_minus", s(b.phi_minus));
            out.put("psi_plus", s(b.psi_plus));
            out.put("phi_plus", s(b.phi_plus));
            out.put("symmetric_interval", opt(b.symmetric_interval));
        }
        Verb::Push => {
            let m = morphism_arg(args, 0).resolve(g)?;
            let c = cut_arg(args, 1);
            let lower = c.push_lower(&m)?;
            let upper = c.push_upper(&m)?;
            out.put("codomain", s(m.cod()));
            out.put("push_lower", s(&lower));
            out.put("push_upper", s(&upper));
            out.put("type", s(lower.classify()));
            out.put("invariance_level", Value::Int(lower.invariance().level() as u64));
        }
        Verb::Pull => {
            let m = morphism_arg(args, 0).resolve(g)?;
            let c = cut_arg(args, 1);
            let back = c.pull(&m)?;
            out.put("codomain", s(m.cod()));
            put_cut(out, &back);
            out.put("codomain_invariance_level", Value::Int(c.invariance().level() as u64));
            out.put(
                "epsilon_upper_level",
                Value::Int(m.epsilon_upper(&c.invariance())?.level() as u64),
            );
        }
        Verb::Skeleton => {
            let sk = g.skeleton();
            out.put("rank", Value::Int(g.rank() as u64));
            out.put("index_size", Value::Int(sk.index.size as u64));
            out.put("quotients", list(&sk.factors));
        }
        Verb::Embed => {
            let x = element_arg(args, 0).expect("required");
            let (hull, m) = g.divisible_hull();
            let image = m.apply(x)?;
            out.put("hull", s(&hull));
            out.put("embedding", s(&image));
            out.put("iota", x.iota().map_or(Value::None, |i| Value::Int(i as u64)));
            out.put("initial_part", opt(x.initial_part()));
            let pair = x.principal_pair().ok();
            out.put("principal_pair", opt(pair.map(|(a, b)| format!("{a}, {b}"))));
        }
        Verb::ConvexSubgroups => {
            out.put("count", Value::Int(g.convex_subgroups().len() as u64));
            out.put("convex_subgroups", list(g.convex_subgroups()));
            out.put("principal", list(g.principal_convex_subgroups()));
        }
        Verb::Discreteness => {
            let d = g.discreteness();
            out.put("is_discrete", Value::Bool(d.is_discrete));
            out.put("is_discretely_ordered", Value::Bool(d.is_discretely_ordered));
            out.put("min_positive", opt(d.min_positive));
        }
        Verb::Hull => {
            let (hull, m) = g.divisible_hull();
            out.put("hull", s(&hull));
            out.put("convex_dense", Value::Bool(m.is_convex_dense()));
        }
        Verb::Orders => {
            let chain = ordsets::FiniteChain::new(g.convex_subgroups().len());
            let rec = ordsets::reconstruct(chain);
            out.put("chain_size", Value::Int(chain.size as u64));
            out.put("successors", Value::Int(ordsets::successors(chain).len() as u64));
            out.put("principal", Value::Int(g.principal_convex_subgroups().len() as u64));
            out.put("segments_of_successors", Value::Int(rec.successor_chain.all_segments().len() as u64));
            out.put("reconstruction_isomorphism", Value::Bool(rec.is_order_isomorphism()));
        }
    }
    Ok(())
}

fn anchor_arg(args: &[Arg], i: usize) -> &OmegaCut {
    match &args[i] {
        Arg::Anchor(a) => a,
        other => unreachable!("slot {i} holds {other:?}"),
    }
}

fn omega_element_arg(args: &[Arg], i: usize) -> Option<&OmegaElement> {
    match args.get(i) {
        Some(Arg::OmegaElement(x)) => Some(x),
        None => None,
        Some(other) => unreachable!("slot {i} holds {other:?}"),
    }
}

fn run_omega(verb: Verb, g: OmegaGroup, args: &[Arg], box_bound: i64, out: &mut Output) -> Result<()> {
    match verb {
        Verb::Classify => {
            let a = anchor_arg(args, 0);
            out.put("type", s(a.classify()));
            out.put("invariance_level", s(a.invariance()));
        }
        Verb::Invariance => {
            let a = anchor_arg(args, 0);
            out.put("invariance_level", s(a.invariance()));
            out.put("index_cut", s(a.index_cut()));
            if let Some(x) = omega_element_arg(args, 1) {
                let bound = usize::try_from(box_bound).unwrap_or(usize::MAX);
                out.put("witness", opt(a.witness_search(x, bound)?));
            }
        }
        Verb::Member => {
            let a = anchor_arg(args, 0);
            let x = omega_element_arg(args, 1).expect("required");
            out.put("side", s(side_name(a.member(x)?)));
        }
        Verb::Translate => {
            let a = anchor_arg(args, 0);
            let x = omega_element_arg(args, 1).expect("required");
            let moved = a.translate(x)?;
            out.put("result_cut", s(&moved));
            out.put("type", s(moved.classify()));
            out.put("invariance_level", s(moved.invariance()));
        }
        Verb::Embed => {
            let x = omega_element_arg(args, 0).expect("required");
            let hull = OmegaGroup::new(crate::scalars::divisible_hull_kind(g.factor()))?;
            let image = hull.element(x.support().to_vec())?;
            out.put("hull", s(hull));
            out.put("embedding", s(&image));
            out.put("iota", x.iota().map_or(Value::None, |i| Value::Int(i as u64)));
            out.put("initial_part", opt(x.iota().map(|i| x.coord(i))));
        }
        Verb::Skeleton => {
            out.put("rank", s("omega"));
            out.put("index", s("omega"));
            out.put("quotients", s(format!("{} at every index", g.factor())));
        }
        Verb::ConvexSubgroups => {
            out.put("count", s("infinite"));
            out.put("convex_subgroups", s("tail(0) ⊋ tail(1) ⊋ ... ⊋ zero"));
            out.put("principal", s("tail(i) for every i"));
        }
        Verb::Discreteness => {
            out.put("is_discrete", Value::Bool(false));
            out.put("is_discretely_ordered", Value::Bool(g.factor() == RankOneKind::IntegersZ));
            out.put("min_positive", Value::None);
        }
        Verb::Hull => {
            let hull = OmegaGroup::new(crate::scalars::divisible_hull_kind(g.factor()))?;
            out.put("hull", s(hull));
            out.put("convex_dense", Value::Bool(true));
        }
        _ => {
            return Err(Error::Unsupported(format!("{verb} needs a finite lex product, not {g}")));
        }
    }
    Ok(())
}

/// Runs a full command line and returns `(exit code, stdout, stderr)`.
pub fn run_args<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Command::from_args(args) {
        Err(CliError::Info(text)) => (0, text, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
        Ok(cmd) => match cmd.run() {
            Ok(text) => (0, text, String::new()),
            Err(e) => (2, String::new(), format!("error: {e}\n")),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(line: &str) -> (i32, String, String) {
        run_args(shlex::split(line).unwrap())
    }

    #[test]
    fn documented_examples() {
        let (code, out, _) = run(r#"invariance lex(Z,Z) "below([2,0]; C 1)""#);
        assert_eq!(code, 0);
        assert!(out.starts_with("invariance_level: 1\n"), "{out}");
        assert!(out.contains("oracle_agrees: true"));
        let (_, out, _) = run(r#"classify hahn_omega(Z) "periodic([]; [1])""#);
        assert!(out.contains("type: tightened"), "{out}");
        let (_, out, _) = run(r#"classify lex(Z) "below([3]; C 1)""#);
        assert!(out.contains("type: relative_jump"), "{out}");
        let (_, out, _) = run(r#"member lex(Z,Z) "below([1,0]; C 1)" "[1,100]""#);
        assert_eq!(out, "side: minus\n");
        let (code, _, err) = run(r#"classify lex(Z) "gap([]; 1; 1/2)""#);
        assert_eq!(code, 2);
        assert!(err.contains("discrete") && err.contains("below/above"), "{err}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run("classify lex(Z,").0, 1);
        assert_eq!(run("frobnicate lex(Z)").0, 1);
        assert_eq!(run(r#"classify lex(Z) "below([1]; C 1)" extra"#).0, 1);
        assert_eq!(run(r#"classify lex(Z) "below([1/2]; C 1)""#).0, 2);
        assert_eq!(run(r#"project lex(Z,Z) "below([1,2]; C 2)" "C 1""#).0, 2);
        assert_eq!(run(r#"compare hahn_omega(Z) "point({})" "point({})""#).0, 2);
        assert_eq!(run("skeleton lex(Z,Q) --help").0, 0);
    }

    #[test]
    fn json_matches_text() {
        let cmd = Command::parse_line(r#"bounds lex(Z,Z) "below([1,0]; C 1)" "[0,5]" --json"#).unwrap();
        let json: Json = serde_json::from_str(&cmd.run().unwrap()).unwrap();
        let text = cmd.execute().unwrap().to_text();
        let obj = json.as_object().unwrap();
        assert_eq!(obj.len(), text.lines().count());
        for (line, (k, _)) in text.lines().zip(obj) {
            assert!(line.starts_with(&format!("{k}: ")));
        }
    }

    #[test]
    fn display_round_trip() {
        for line in [
            r#"push 'lex(Z[sqrt 2])' widen "gap([]; 1; 1/2)""#,
            r#"pull lex(Z,Q) widen "below([1/2,0]; C 2)" --seed 3"#,
            r#"trace lex(Z,Z,Q) "gap([1,2]; 3; 0 + 1*sqrt(3))" "C 1" --json"#,
            r#"invariance hahn_omega(Z) "periodic([]; [1])" "{3:1}" --box 4"#,
        ] {
            let cmd = Command::parse_line(line).unwrap();
            assert_eq!(Command::parse_line(&cmd.to_string()).unwrap(), cmd, "{cmd}");
        }
    }
}
