//! Command dispatch for the `autalg` binary.
//!
//! Every command produces a [`CommandResult`], printed as JSON on standard
//! output. Exit codes: 0 pass, 1 property failure or incompatibility, 2 usage
//! or input error.

use std::fs;
use std::path::{Path, PathBuf};

use autalg_core::algebra::{FiniteSet, Word};
use autalg_core::cascade::{
    cascade_pure, cascade_semigroup, check_semigroup_triple, embed_into_wreath, wreath_automaton, wreath_semigroup,
};
use autalg_core::first_type::{check_first_axioms, semigroupify};
use autalg_core::group::{
    distinguishing_word, element_apply, element_compose, element_equal, element_invert, element_minimize,
    element_order_bounded, run_letters, MealyElement, OrderOutcome,
};
use autalg_core::schema::{parse_with_default_type, to_json, Object};
use autalg_core::second_type::{check_second_axioms, compatible_up_to, quotient_construct, PureAutomatonSecond, Quotient};
use autalg_core::serial::{apply_mapping, check_serial, decode_mapping, derive_second_type, AutomatonMapping, SerialConnection};
use autalg_core::{dot, Verdict, DEFAULT_CAP};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "autalg", version, about = "Build and verify automata over finite semigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Largest semigroup, wreath product or composed machine to build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Cross-check a quotient against all words up to this length.
    #[arg(long = "max-len", global = true)]
    pub max_len: Option<usize>,
    /// Cross-check machine equality against all words up to this length.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Write a Graphviz rendering of the checked or constructed automaton.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Write the constructed object here instead of embedding it in the result.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a file and check the laws its type must satisfy.
    Check {
        file: PathBuf,
        /// Component automata, required for cascade triples.
        #[arg(long, num_args = 2, value_names = ["M1", "M2"])]
        with: Option<Vec<PathBuf>>,
    },
    /// Build a new object from existing ones.
    #[command(subcommand)]
    Construct(Construct),
    /// Operations on invertible Mealy machines.
    #[command(subcommand)]
    Group(GroupCommand),
    /// The word map of a pure second-type automaton at one state.
    #[command(subcommand)]
    Mapping(MappingCommand),
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Close a pure first-type automaton into a semigroup automaton.
    Semigroupify { file: PathBuf },
    /// Cascade of two automata driven by a triple.
    Cascade { m1: PathBuf, m2: PathBuf, triple: PathBuf },
    /// Wreath-product automaton of two semigroup automata.
    Wreath { m1: PathBuf, m2: PathBuf },
    /// Serial connection of a second-type automaton.
    Serial { file: PathBuf },
    /// Second-type automaton of a serial connection.
    DeriveSecond { file: PathBuf },
    /// Quotient of a pure second-type automaton along two generator maps.
    Quotient { machine: PathBuf, mu: PathBuf, nu: PathBuf },
    /// Canonical map of a cascade triple into the wreath product.
    Embed { m1: PathBuf, m2: PathBuf, triple: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum GroupCommand {
    /// Image of a word under a machine.
    Apply { file: PathBuf, word: Vec<String> },
    /// The first machine followed by the second.
    Compose { first: PathBuf, second: PathBuf },
    /// Inverse machine; every reachable state must permute the alphabet.
    Invert { file: PathBuf },
    /// Whether two machines transduce every word alike.
    Equal { first: PathBuf, second: PathBuf },
    /// Smallest power equal to the identity.
    Order {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        max_power: usize,
    },
    /// Smallest machine with the same transduction.
    Minimize { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum MappingCommand {
    /// `u ↦ a∗u` for a state `a`.
    Apply {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        state: usize,
        word: Vec<String>,
    },
    /// Inverse of `apply` for statewise bijective machines.
    Decode {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        state: usize,
        word: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub witness: Option<Value>,
    pub value: Option<Value>,
    pub error: Option<String>,
    pub artifact_paths: Vec<PathBuf>,
}

impl CommandResult {
    fn pass(value: Option<Value>) -> Self {
        Self {
            status: Status::Pass,
            witness: None,
            value,
            error: None,
            artifact_paths: Vec::new(),
        }
    }

    fn fail(witness: Value) -> Self {
        Self {
            status: Status::Fail,
            witness: Some(witness),
            value: None,
            error: None,
            artifact_paths: Vec::new(),
        }
    }

    fn error(message: String) -> Self {
        Self {
            status: Status::Error,
            witness: None,
            value: None,
            error: Some(message),
            artifact_paths: Vec::new(),
        }
    }

    fn from_verdict<W: serde::Serialize>(v: Verdict<W>) -> Self {
        match v {
            Verdict::Pass => Self::pass(None),
            Verdict::Fail(w) => Self::fail(serde_json::to_value(w).expect("witnesses serialize")),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "status": self.status.as_str(),
            "artifact_paths": self.artifact_paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        });
        let map = v.as_object_mut().unwrap();
        if let Some(w) = &self.witness {
            map.insert("witness".into(), w.clone());
        }
        if let Some(x) = &self.value {
            map.insert("value".into(), x.clone());
        }
        if let Some(e) = &self.error {
            map.insert("error".into(), Value::String(e.clone()));
        }
        v
    }
}

type Outcome = Result<CommandResult, String>;

fn core_err(context: &str) -> impl Fn(autalg_core::Error) -> String + '_ {
    move |e| format!("{context}: {e}")
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Only generator maps may omit `"type"`.
fn load(path: &Path) -> Result<Object, String> {
    parse_with_default_type(&read(path)?, "generator-hom").map_err(|e| format!("{}: {e}", path.display()))
}

fn load_hom(path: &Path) -> Result<autalg_core::second_type::GeneratorHom, String> {
    match load(path)? {
        Object::GeneratorHom(h) => Ok(h),
        o => Err(format!("{}: expected generator-hom, found {}", path.display(), o.type_name())),
    }
}

macro_rules! expect_type {
    ($obj:expr, $path:expr, $variant:ident, $name:literal) => {
        match $obj {
            Object::$variant(x) => x,
            other => {
                return Err(format!(
                    "{}: expected {}, found {}",
                    $path.display(),
                    $name,
                    other.type_name()
                ))
            }
        }
    };
}

fn load_element(path: &Path) -> Result<MealyElement, String> {
    load(path)?.mealy_element().map_err(|e| format!("{}: {e}", path.display()))
}

fn render_dot(obj: &Object) -> Option<String> {
    match obj {
        Object::FirstPure(m) => Some(dot::first_pure(m)),
        Object::FirstSemigroup(m) => Some(dot::first_semigroup(m)),
        Object::SecondPure(m) => Some(dot::second_pure(m)),
        Object::SecondSemigroup(m) => Some(dot::second_semigroup(m)),
        Object::Mealy { machine, initial } => Some(dot::mealy(machine, *initial)),
        _ => None,
    }
}

fn write_file(path: &Path, text: &str, result: &mut CommandResult) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    result.artifact_paths.push(path.to_path_buf());
    Ok(())
}

fn write_dot(obj: &Object, opts: &Options, result: &mut CommandResult) -> Result<(), String> {
    if let Some(path) = &opts.dot {
        let text = render_dot(obj).ok_or_else(|| format!("no graph export for {}", obj.type_name()))?;
        write_file(path, &text, result)?;
    }
    Ok(())
}

/// Result carrying a constructed object, written to `--output` or inlined.
fn emit(obj: Object, opts: &Options) -> Outcome {
    let text = to_json(&obj);
    let mut result = CommandResult::pass(None);
    match &opts.output {
        Some(path) => write_file(path, &text, &mut result)?,
        None => result.value = Some(serde_json::from_str(&text).expect("own output parses")),
    }
    write_dot(&obj, opts, &mut result)?;
    Ok(result)
}

fn parse_word(tokens: &[String], alphabet: &FiniteSet) -> Result<Word, String> {
    let mut letters = Vec::new();
    for token in tokens.iter().flat_map(|t| t.split_whitespace()) {
        if let Some(x) = alphabet.parse_label(token) {
            letters.push(x);
            continue;
        }
        // single-character labels may be run together, as in `011`
        let chars: Option<Vec<usize>> = token.chars().map(|c| alphabet.parse_label(&c.to_string())).collect();
        match chars {
            Some(xs) => letters.extend(xs),
            None => return Err(format!("unknown letter {token:?}")),
        }
    }
    if letters.is_empty() {
        return Err("empty word".into());
    }
    Word::new(letters, alphabet.size()).map_err(|e| e.to_string())
}

fn show_word(w: &Word, alphabet: &FiniteSet) -> String {
    w.letters().iter().map(|&x| alphabet.label(x)).collect::<Vec<_>>().join(" ")
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> CommandResult {
    let opts = &cli.options;
    let outcome = match &cli.command {
        Command::Check { file, with } => cmd_check(file, with.as_deref(), opts),
        Command::Construct(c) => cmd_construct(c, opts),
        Command::Group(g) => cmd_group(g, opts),
        Command::Mapping(m) => cmd_mapping(m),
    };
    outcome.unwrap_or_else(CommandResult::error)
}

pub fn cmd_check(file: &Path, with: Option<&[PathBuf]>, opts: &Options) -> Outcome {
    let obj = load(file)?;
    let mut result = match &obj {
        Object::FirstSemigroup(m) => CommandResult::from_verdict(check_first_axioms(m)),
        Object::SecondSemigroup(m) => CommandResult::from_verdict(check_second_axioms(m)),
        Object::Serial(s) => CommandResult::from_verdict(check_serial(s)),
        Object::CascadeTriple(t) => {
            let [p1, p2] = with.ok_or("cascade-triple needs --with M1 M2")? else {
                return Err("--with takes two files".into());
            };
            match (load(p1)?, load(p2)?) {
                (Object::FirstPure(m1), Object::FirstPure(m2)) => {
                    let t = t.to_pure(&m1).map_err(core_err("triple"))?;
                    t.validate(&m1, &m2).map_err(core_err("triple"))?;
                    CommandResult::pass(None)
                }
                (Object::FirstSemigroup(m1), Object::FirstSemigroup(m2)) => {
                    let t = t.to_semigroup(&m1).map_err(core_err("triple"))?;
                    CommandResult::from_verdict(check_semigroup_triple(&t, &m1, &m2).map_err(core_err("triple"))?)
                }
                (a, b) => {
                    return Err(format!(
                        "components must both be first-pure or both first-semigroup, found {} and {}",
                        a.type_name(),
                        b.type_name()
                    ))
                }
            }
        }
        Object::Mealy { machine, .. } => CommandResult::pass(Some(json!({
            "states": machine.states().size(),
            "invertible": machine.is_invertible(),
        }))),
        Object::FirstPure(_) | Object::SecondPure(_) | Object::GeneratorHom(_) | Object::Embedding(_) => {
            CommandResult::pass(None)
        }
    };
    if let Some(map) = result.value.as_mut().and_then(Value::as_object_mut) {
        map.insert("type".into(), obj.type_name().into());
    } else if result.value.is_none() {
        result.value = Some(json!({ "type": obj.type_name() }));
    }
    write_dot(&obj, opts, &mut result)?;
    Ok(result)
}

pub fn cmd_construct(c: &Construct, opts: &Options) -> Outcome {
    match c {
        Construct::Semigroupify { file } => {
            let m = expect_type!(load(file)?, file, FirstPure, "first-pure");
            emit(Object::FirstSemigroup(semigroupify(&m, opts.cap).map_err(core_err("semigroupify"))?), opts)
        }
        Construct::Cascade { m1, m2, triple } => {
            let t = expect_type!(load(triple)?, triple, CascadeTriple, "cascade-triple");
            match (load(m1)?, load(m2)?) {
                (Object::FirstPure(a), Object::FirstPure(b)) => {
                    let t = t.to_pure(&a).map_err(core_err("triple"))?;
                    emit(Object::FirstPure(cascade_pure(&a, &b, &t).map_err(core_err("cascade"))?), opts)
                }
                (Object::FirstSemigroup(a), Object::FirstSemigroup(b)) => {
                    let t = t.to_semigroup(&a).map_err(core_err("triple"))?;
                    if let Verdict::Fail(v) = check_semigroup_triple(&t, &a, &b).map_err(core_err("triple"))? {
                        return Ok(CommandResult::from_verdict(Verdict::Fail(v)));
                    }
                    emit(Object::FirstSemigroup(cascade_semigroup(&a, &b, &t).map_err(core_err("cascade"))?), opts)
                }
                (a, b) => Err(format!(
                    "components must both be first-pure or both first-semigroup, found {} and {}",
                    a.type_name(),
                    b.type_name()
                )),
            }
        }
        Construct::Wreath { m1, m2 } => {
            let a = expect_type!(load(m1)?, m1, FirstSemigroup, "first-semigroup");
            let b = expect_type!(load(m2)?, m2, FirstSemigroup, "first-semigroup");
            let w = wreath_automaton(&a, &b, opts.cap).map_err(core_err("wreath"))?;
            emit(Object::FirstSemigroup(w.automaton), opts)
        }
        Construct::Serial { file } => {
            let m = expect_type!(load(file)?, file, SecondSemigroup, "second-semigroup");
            let s = SerialConnection::from_second_type(&m).map_err(core_err("serial"))?;
            if let Verdict::Fail(v) = check_serial(&s) {
                return Ok(CommandResult::from_verdict(Verdict::Fail(v)));
            }
            emit(Object::Serial(s), opts)
        }
        Construct::DeriveSecond { file } => {
            let s = expect_type!(load(file)?, file, Serial, "serial");
            if let Verdict::Fail(v) = check_serial(&s) {
                return Ok(CommandResult::from_verdict(Verdict::Fail(v)));
            }
            emit(Object::SecondSemigroup(derive_second_type(&s)), opts)
        }
        Construct::Quotient { machine, mu, nu } => {
            let m = match load(machine)? {
                Object::SecondPure(m) => m,
                Object::Mealy { machine: mm, .. } => mm.to_second_type(),
                o => return Err(format!("{}: expected second-pure or mealy, found {}", machine.display(), o.type_name())),
            };
            let (mu, nu) = (load_hom(mu)?, load_hom(nu)?);
            let q = quotient_construct(&m, &mu, &nu).map_err(core_err("quotient"))?;
            if let Some(len) = opts.max_len {
                let bounded = compatible_up_to(&m, &mu, &nu, len).map_err(core_err("quotient"))?;
                if bounded != matches!(q, Quotient::WellDefined(_)) {
                    return Err(format!("internal: quotient disagrees with the word check up to length {len}"));
                }
            }
            match q {
                Quotient::WellDefined(q) => emit(Object::SecondSemigroup(q), opts),
                Quotient::Incompatible(w) => Ok(CommandResult::fail(serde_json::to_value(w).expect("witnesses serialize"))),
            }
        }
        Construct::Embed { m1, m2, triple } => {
            let a = expect_type!(load(m1)?, m1, FirstSemigroup, "first-semigroup");
            let b = expect_type!(load(m2)?, m2, FirstSemigroup, "first-semigroup");
            let t = expect_type!(load(triple)?, triple, CascadeTriple, "cascade-triple");
            let t = t.to_semigroup(&a).map_err(core_err("triple"))?;
            if let Verdict::Fail(v) = check_semigroup_triple(&t, &a, &b).map_err(core_err("triple"))? {
                return Ok(CommandResult::from_verdict(Verdict::Fail(v)));
            }
            let w = wreath_semigroup(a.gamma(), b.states(), b.next(), b.gamma(), opts.cap).map_err(core_err("wreath"))?;
            emit(Object::Embedding(embed_into_wreath(&t, &a, &b, &w).map_err(core_err("embed"))?), opts)
        }
    }
}

pub fn cmd_group(g: &GroupCommand, opts: &Options) -> Outcome {
    match g {
        GroupCommand::Apply { file, word } => {
            let e = load_element(file)?;
            let alphabet = e.machine().alphabet().clone();
            let u = parse_word(word, &alphabet)?;
            let v = element_apply(&e, &u).map_err(core_err("apply"))?;
            Ok(CommandResult::pass(Some(Value::String(show_word(&v, &alphabet)))))
        }
        GroupCommand::Compose { first, second } => {
            let c = element_compose(&load_element(first)?, &load_element(second)?).map_err(core_err("compose"))?;
            emit(Object::from(c), opts)
        }
        GroupCommand::Invert { file } => {
            let inv = element_invert(&load_element(file)?).map_err(core_err("invert"))?;
            emit(Object::from(inv), opts)
        }
        GroupCommand::Minimize { file } => emit(Object::from(element_minimize(&load_element(file)?)), opts),
        GroupCommand::Equal { first, second } => {
            let (e1, e2) = (load_element(first)?, load_element(second)?);
            let equal = element_equal(&e1, &e2).map_err(core_err("equal"))?;
            if let Some(depth) = opts.depth {
                let agree = Word::all_up_to(e1.alphabet_size(), depth)
                    .all(|w| run_letters(&e1, w.letters()) == run_letters(&e2, w.letters()));
                if equal && !agree {
                    return Err(format!("internal: equal machines disagree on a word of length ≤ {depth}"));
                }
            }
            if equal {
                return Ok(CommandResult::pass(Some(Value::Bool(true))));
            }
            let w = distinguishing_word(&e1, &e2)
                .map_err(core_err("equal"))?
                .expect("unequal machines have a distinguishing word");
            let alphabet = e1.machine().alphabet();
            let mut result = CommandResult::fail(json!({
                "word": show_word(&w, alphabet),
                "first": show_word(&Word::new(run_letters(&e1, w.letters()), alphabet.size()).unwrap(), alphabet),
                "second": show_word(&Word::new(run_letters(&e2, w.letters()), alphabet.size()).unwrap(), alphabet),
            }));
            result.value = Some(Value::Bool(false));
            Ok(result)
        }
        GroupCommand::Order { file, max_power } => {
            let e = load_element(file)?;
            match element_order_bounded(&e, *max_power, opts.cap).map_err(core_err("order"))? {
                OrderOutcome::Finite(k) => Ok(CommandResult::pass(Some(json!(k)))),
                OrderOutcome::ExceedsPower { reached } => Ok(CommandResult::fail(json!({ "no_identity_power_up_to": reached }))),
                OrderOutcome::ExceedsStates { power, states } => {
                    Ok(CommandResult::fail(json!({ "power": power, "states": states, "cap": opts.cap })))
                }
            }
        }
    }
}

fn load_transducer(path: &Path) -> Result<PureAutomatonSecond, String> {
    match load(path)? {
        Object::SecondPure(m) => Ok(m),
        Object::Mealy { machine, .. } => Ok(machine.to_second_type()),
        o => Err(format!("{}: expected second-pure or mealy, found {}", path.display(), o.type_name())),
    }
}

pub fn cmd_mapping(m: &MappingCommand) -> Outcome {
    match m {
        MappingCommand::Apply { file, state, word } => {
            let base = load_transducer(file)?;
            let f = AutomatonMapping::new(&base, *state).map_err(core_err("mapping"))?;
            let u = parse_word(word, base.inputs())?;
            let v = apply_mapping(&f, &u).map_err(core_err("apply"))?;
            Ok(CommandResult::pass(Some(Value::String(show_word(&v, base.outputs())))))
        }
        MappingCommand::Decode { file, state, word } => {
            let base = load_transducer(file)?;
            let f = AutomatonMapping::new(&base, *state).map_err(core_err("mapping"))?;
            let v = parse_word(word, base.outputs())?;
            let u = decode_mapping(&f, &v).map_err(core_err("decode"))?;
            Ok(CommandResult::pass(Some(Value::String(show_word(&u, base.inputs())))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_accept_runs_of_single_letters() {
        let x = FiniteSet::new(2).unwrap();
        let w = parse_word(&["0 1".into(), "10".into()], &x).unwrap();
        assert_eq!(w.letters(), &[0, 1, 1, 0]);
        assert!(parse_word(&["2".into()], &x).is_err());
        assert!(parse_word(&[], &x).is_err());
        let named = FiniteSet::with_labels(vec!["up".into(), "down".into()]).unwrap();
        let w = parse_word(&["down up".into()], &named).unwrap();
        assert_eq!(show_word(&w, &named), "down up");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CommandResult::pass(None).exit_code(), 0);
        assert_eq!(CommandResult::fail(json!({})).exit_code(), 1);
        assert_eq!(CommandResult::error("x".into()).exit_code(), 2);
        let j = CommandResult::fail(json!({"k": 1})).to_json();
        assert_eq!(j["status"], "fail");
        assert_eq!(j["witness"]["k"], 1);
    }
}
