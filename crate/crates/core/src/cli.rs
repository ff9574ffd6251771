//! Command line front end. Every command prints one deterministic report.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hull::{hasse_export, InverseHull};
use crate::semigroup::{Elem, Semigroup, Verdict};
use crate::spectrum::Spectrum;
use crate::strings::{classify_element, is_open, StringSpace};
use crate::subshift::{language_semigroup, Cardinality, ShiftSemigroup, SubshiftSpec};
use crate::tables::random_tables;
use crate::verify::{verify_semigroup, verify_subshift, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug, Clone)]
#[command(name = "semihull", version, about = "Inverse hulls, strings and characters of finite 0-left-cancellative semigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    All,
    Ultra,
    Max,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Structural properties of a multiplication table
    Classify { file: PathBuf },
    /// The inverse hull and its constructible sets
    Hull {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Strings and the action on them
    Strings { file: PathBuf },
    /// Characters of the constructible sets
    Spectrum { file: PathBuf },
    /// Groupoid of germs over a set of characters
    Germs {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        space: Space,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Language semigroup of a subshift
    Subshift {
        spec: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        emit_semigroup: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        lambda_bound: usize,
    },
    /// Every invariant the library checks
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        lambda_bound: usize,
        #[arg(long)]
        depth: Option<usize>,
        /// Also sweep seeded random tables
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        random: usize,
    },
}

/// What a run produced: text for stdout and an exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok((text, violations)) => Outcome {
            stdout: text,
            stderr: String::new(),
            code: if violations { EXIT_VIOLATION } else { EXIT_OK },
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_INPUT,
        },
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn report(command: &str, input: &str, results: Value, violations: Vec<Value>) -> (String, bool) {
    let bad = !violations.is_empty();
    let doc = json!({
        "tool": "semihull",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input_digest": digest(input),
        "results": results,
        "violations": violations,
    });
    (serde_json::to_string_pretty(&doc).expect("plain data") + "\n", bad)
}

fn names(s: &Semigroup, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| s.name(x).to_string()).collect()
}

fn verdict<const N: usize>(s: &Semigroup, v: &Verdict<[Elem; N]>) -> Value {
    json!({"holds": v.holds, "witness": v.witness.map(|w| names(s, &w))})
}

fn dispatch(cli: &Cli) -> Result<(String, bool)> {
    match &cli.command {
        Command::Classify { file } => {
            let text = read(file)?;
            let s = Semigroup::from_json(&text)?;
            Ok(report("classify", &text, classify_json(&s)?, Vec::new()))
        }
        Command::Hull { file, emit } => {
            let text = read(file)?;
            let s = Semigroup::from_json(&text)?;
            let hull = InverseHull::generate(&s)?;
            match emit {
                Emit::Dot => Ok((hasse_export(&s, &hull.semilattice()), false)),
                Emit::Json => Ok(report("hull", &text, hull_json(&s, &hull), Vec::new())),
            }
        }
        Command::Strings { file } => {
            let text = read(file)?;
            let s = Semigroup::from_json(&text)?;
            Ok(report("strings", &text, strings_json(&s)?, Vec::new()))
        }
        Command::Spectrum { file } => {
            let text = read(file)?;
            let s = Semigroup::from_json(&text)?;
            Ok(report("spectrum", &text, spectrum_json(&Spectrum::new(&s)?)?, Vec::new()))
        }
        Command::Germs { file, space, emit } => {
            let text = read(file)?;
            let s = Semigroup::from_json(&text)?;
            germs(&text, &s, *space, *emit)
        }
        Command::Subshift { spec, depth, emit_semigroup, lambda_bound } => {
            let text = read(spec)?;
            let spec = SubshiftSpec::from_json(&text)?;
            let shift = language_semigroup(&spec, *depth)?;
            if let Some(out) = emit_semigroup {
                let doc = serde_json::to_string_pretty(&shift.semigroup().to_document()).expect("plain data");
                fs::write(out, doc + "\n").map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
            }
            Ok(report("subshift", &text, subshift_json(&shift, *lambda_bound)?, Vec::new()))
        }
        Command::Verify { input, lambda_bound, depth, seed, random } => {
            let text = read(input)?;
            let probe: Value = serde_json::from_str(&text).map_err(|e| Error::MalformedTable(e.to_string()))?;
            let mut suite = if probe.get("alphabet").is_some() {
                let spec = SubshiftSpec::from_json(&text)?;
                verify_subshift(&language_semigroup(&spec, *depth)?, *lambda_bound)?
            } else {
                verify_semigroup(&Semigroup::from_json(&text)?)?
            };
            if let Some(seed) = seed {
                let mut dirty = 0;
                for (i, s) in random_tables(*seed, *random, 5).iter().enumerate() {
                    let sub = verify_semigroup(s)?;
                    for c in sub.violations() {
                        dirty += 1;
                        let mut c = c.clone();
                        c.name = format!("random table {i}: {}", c.name);
                        suite.checks.push(c);
                    }
                }
                suite.findings.insert("random tables".into(), json!({"seed": seed, "count": random, "dirty": dirty}));
            }
            let violations = suite_violations(&suite);
            Ok(report("verify", &text, serde_json::to_value(&suite).expect("plain data"), violations))
        }
    }
}

fn suite_violations(suite: &Suite) -> Vec<Value> {
    suite
        .violations()
        .into_iter()
        .map(|c| json!({"anchor": c.name, "witness": c.witness}))
        .collect()
}

pub fn classify_json(s: &Semigroup) -> Result<Value> {
    let r = s.classify();
    let mut elements = Map::new();
    for x in s.nonzero() {
        let c = classify_element(s, x)?;
        elements.insert(s.name(x).to_string(), serde_json::to_value(c).expect("plain data"));
    }
    Ok(json!({
        "size": s.size(),
        "zero_left_cancellative": verdict(s, &r.zero_left_cancellative),
        "zero_right_cancellative": verdict(s, &r.zero_right_cancellative),
        "categorical_at_zero": verdict(s, &r.categorical_at_zero),
        "right_reductive": verdict(s, &r.right_reductive),
        "right_local_units": {
            "holds": r.right_local_units.holds,
            "witness": r.right_local_units.witness.map(|w| s.name(w).to_string()),
        },
        "admits_lcms": {
            "holds": s.admits_lcms(),
            "witness": s.lcm_failure().map(|(a, b)| names(s, &[a, b])),
        },
        "idempotents": names(s, &r.idempotents),
        "unit": r.unital.map(|u| s.name(u).to_string()),
        "orthogonal_idempotents": r.orthogonal_idempotents.as_ref().map(|v| verdict(s, v)),
        "elements": elements,
    }))
}

pub fn hull_json(s: &Semigroup, hull: &InverseHull) -> Value {
    let theta = hull.theta();
    let elements: Vec<Value> = hull
        .elements()
        .iter()
        .map(|h| {
            json!({
                "pairs": theta.named_pairs(&h.map),
                "normal_forms": h.witnesses.iter().map(|w| w.render(s)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let lattice = hull.semilattice();
    let label = |i: usize| format!("{{{}}}", s.set_names(lattice.members(i)).join(","));
    let sets: Vec<Value> = (0..lattice.len())
        .map(|i| {
            json!({
                "members": s.set_names(lattice.members(i)),
                "witnesses": lattice.get(i).witnesses.iter()
                    .map(|w| format!("({}, {})", s.unitized_name(w.u), crate::hull::render_lambda(s, &w.lambda)))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut covers: Vec<(String, String)> = lattice.covers().into_iter().map(|(a, b)| (label(a), label(b))).collect();
    covers.sort();
    json!({
        "size": hull.len(),
        "admits_lcms": hull.admits_lcms(),
        "elements": elements,
        "constructible_sets": sets,
        "covers": covers,
    })
}

pub fn strings_json(s: &Semigroup) -> Result<Value> {
    s.require_left_cancellative()?;
    let space = StringSpace::new(s)?;
    let star = space.star_rep(s);
    let m = space.maximality_report(s, &star);
    let strings: Vec<Value> = (0..space.len())
        .map(|i| {
            json!({
                "members": s.set_names(space.get(i)),
                "top": s.name(space.top(i)),
                "open": is_open(s, space.get(i)),
                "maximal": m.maximal.contains(&i),
            })
        })
        .collect();
    let mut action = Map::new();
    for a in s.nonzero() {
        let pairs: Vec<(String, String)> = star
            .map(a)
            .pairs()
            .map(|(x, y)| (space.label(s, x), space.label(s, y)))
            .collect();
        action.insert(s.name(a).to_string(), json!(pairs));
    }
    let fail = |v: &[(Elem, usize)]| {
        v.iter().map(|&(r, i)| (s.name(r).to_string(), space.label(s, i))).collect::<Vec<_>>()
    };
    Ok(json!({
        "count": space.len(),
        "strings": strings,
        "action": action,
        "maximality_lost_forward": fail(&m.forward_failures),
        "maximality_lost_backward": fail(&m.inverse_failures),
    }))
}

pub fn spectrum_json(sp: &Spectrum) -> Result<Value> {
    let s = sp.semigroup();
    let mut chars = Vec::new();
    for c in sp.characters() {
        let class = sp.classify_character(c);
        let decomposition = match sp.nonopen_decomposition(c) {
            Ok(d) => json!({"u": s.unitized_name(d.u), "ground": sp.char_label(d.ground)}),
            Err(_) => Value::Null,
        };
        chars.push(json!({
            "min": sp.char_label(c),
            "string": s.set_names(&sp.sigma_of_char(c)),
            "class": class,
            "decomposition": decomposition,
        }));
    }
    let sub = sp.spectra_subsets()?;
    let labels = |v: &[usize]| v.iter().map(|&c| sp.char_label(c)).collect::<Vec<_>>();
    let mut out = json!({
        "characters": chars,
        "count": sp.char_count(),
        "ultra": labels(&sub.ultra),
        "max": labels(&sub.max),
        "tight": labels(&sub.tight),
        "open": labels(&sub.open),
    });
    if s.admits_lcms() {
        let u = sp.ultra_classification()?;
        let quasi: Vec<String> = u.quasi_maximal.iter().map(|&i| sp.string_label(i)).collect();
        out["quasi_maximal_strings"] = json!(quasi);
    }
    Ok(out)
}

fn germs(text: &str, s: &Semigroup, space: Space, emit: Emit) -> Result<(String, bool)> {
    let sp = Spectrum::new(s)?;
    let objects = match space {
        Space::All => sp.characters().collect(),
        Space::Ultra => sp.ultra(),
        Space::Max => sp.max_characters()?,
    };
    let g = match sp.germ_groupoid(&objects) {
        Ok(g) => g,
        Err(Error::NotInvariant(w)) => {
            let v = vec![json!({"anchor": "chosen characters are invariant", "witness": w})];
            return Ok(report("germs", text, Value::Null, v));
        }
        Err(e) => return Err(e),
    };
    if emit == Emit::Dot {
        return Ok((g.to_dot(&sp), false));
    }
    let ax = g.axioms();
    let arrows: Vec<Value> = g
        .arrows()
        .iter()
        .map(|a| {
            json!({
                "source": sp.char_label(a.source),
                "target": sp.char_label(a.target),
                "germ": sp.theta().named_pairs(&a.germ),
            })
        })
        .collect();
    let violations = if ax.holds() {
        Vec::new()
    } else {
        vec![json!({"anchor": "groupoid axioms", "witness": format!("{ax:?}")})]
    };
    let results = json!({
        "objects": objects.iter().map(|&c| sp.char_label(c)).collect::<Vec<_>>(),
        "arrows": arrows,
        "axioms": ax,
    });
    Ok(report("germs", text, results, violations))
}

pub fn subshift_json(shift: &ShiftSemigroup, lambda_bound: usize) -> Result<Value> {
    let l = shift.language();
    let s = shift.semigroup();
    let bridge = shift.word_string_bridge()?;
    let mut out = json!({
        "depth": l.depth(),
        "words": l.names(),
        "semigroup_size": s.size(),
        "zero": s.name(s.zero()),
        "classify": classify_json(s)?,
        "bridge": bridge,
    });
    if l.automaton().is_some() {
        let g = shift.ground_ultra_report(lambda_bound)?;
        out["ground_ultra"] = serde_json::to_value(&g).expect("plain data");
        let letters: Vec<_> = (0..l.spec().alphabet().len() as u8).map(|x| crate::subshift::Word(vec![x])).collect();
        let mut single = Map::new();
        for w in &letters {
            let c = shift.constructible_infinite(std::slice::from_ref(w), None)?;
            single.insert(l.render(w), cardinality_json(&c));
        }
        out["follower_sets"] = Value::Object(single);
    } else {
        out["ground_ultra"] = json!("not a subshift");
    }
    Ok(out)
}

fn cardinality_json(c: &Cardinality) -> Value {
    match c {
        Cardinality::Empty => json!("empty"),
        Cardinality::Infinite => json!("infinite"),
        Cardinality::Finite(m) => json!({"finite": m}),
    }
}
