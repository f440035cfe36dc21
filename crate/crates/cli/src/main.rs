//! `coxq`: quotient invariants of Coxeter groups from the command line.
//!
//! Diagram arguments name a bundled fixture or a file in the text or JSON
//! diagram format. Exit status is 0 on success, 2 on bad input, and for
//! `compare` 1 when the diagrams differ.

mod verify;

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxeter_quotients::{
    base_of, base_reduction_status, binary_direct, binary_invariant, component_types,
    enumerate_bases, even_direct, even_invariant, exchange, family_quotient, fixtures,
    generate_random, isomorphic, quotient_by_power_relators, rank2_greedy, rank2_sequence,
    read_diagram, CorpusSpec, DiagramFormat, FamilySpec, GeneratorSubset, PDiagram, PowerRelator,
    QuotientOutcome, DEFAULT_MAX_COSETS,
};

#[derive(Parser)]
#[command(
    name = "coxq",
    version,
    about = "Quotient isomorphism invariants of Coxeter groups"
)]
struct Cli {
    /// Emit diagrams and reports as JSON.
    #[arg(long, global = true, conflicts_with = "dot")]
    json: bool,
    /// Emit diagrams in Graphviz DOT.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Fixture name or diagram file.
    diagram: String,
}

#[derive(Args)]
struct Traced {
    #[command(flatten)]
    input: Input,
    /// Print the engine steps and the generator classes.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Raw,
    Binary,
    Even,
    Rank2,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, edges, components and bases.
    Info(Input),
    /// Finite type of each irreducible component, or of one subset.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated generators to classify instead.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Bases with their types and reduction status.
    Bases(Input),
    /// Quotient by power relators `(st)^d`.
    Quotient {
        #[command(flatten)]
        traced: Traced,
        /// A relator "s t d"; repeatable.
        #[arg(long = "relator", required = true)]
        relators: Vec<String>,
    },
    /// Binary invariant: quotient by the elements of odd order.
    Binary {
        #[command(flatten)]
        traced: Traced,
        /// Read the quotient off the odd components instead.
        #[arg(long, conflicts_with = "trace")]
        direct: bool,
    },
    /// Even invariant.
    Even {
        #[command(flatten)]
        traced: Traced,
        /// Read the quotient off the odd components instead.
        #[arg(long, conflicts_with = "trace")]
        direct: bool,
    },
    /// Quotient by the commutator subgroups of bases in a family.
    Family {
        #[command(flatten)]
        traced: Traced,
        /// Comma-separated types, e.g. A3,C3.
        #[arg(long)]
        types: String,
    },
    /// Spherical rank-2 invariant.
    Rank2 {
        #[command(flatten)]
        traced: Traced,
        /// Print every stage of the tower.
        #[arg(long, conflicts_with = "greedy")]
        stages: bool,
        /// Use local triple moves instead of staged quotients.
        #[arg(long)]
        greedy: bool,
    },
    /// Rewrite an unreduced base into its matching base.
    Exchange {
        #[command(flatten)]
        input: Input,
        /// Comma-separated members of the base.
        #[arg(long)]
        base: String,
    },
    /// Compare two diagrams, or their invariants, up to isomorphism.
    Compare {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value = "raw")]
        kind: Kind,
    },
    /// Seeded random diagrams.
    Random {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        min_rank: usize,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_probability: f64,
        /// Largest finite label.
        #[arg(long, default_value_t = 12)]
        max_label: u32,
        /// Only even labels.
        #[arg(long)]
        even: bool,
    },
    /// Cross-check known orders against coset enumeration.
    Verify,
    /// Graphviz DOT of a diagram.
    Dot(Input),
}

fn load(arg: &str) -> Result<PDiagram> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return read_diagram(&text).with_context(|| format!("parsing {arg}"));
    }
    fixtures::fixture(arg).ok_or_else(|| {
        let names: Vec<&str> = fixtures::fixture_names().collect();
        anyhow!(
            "`{arg}` is neither a file nor a fixture ({})",
            names.join(", ")
        )
    })
}

fn subset_arg(d: &PDiagram, list: &str) -> Result<GeneratorSubset> {
    let names: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(d.subset(&names)?)
}

fn braces(names: &[&str]) -> String {
    format!("{{{}}}", names.join(", "))
}

struct Out {
    format: DiagramFormat,
}

impl Out {
    fn json(&self) -> bool {
        self.format == DiagramFormat::Json
    }

    fn diagram_value(d: &PDiagram) -> Value {
        serde_json::from_str(&coxeter_quotients::emit_diagram(d, DiagramFormat::Json))
            .expect("emitted JSON parses")
    }

    fn diagram(&self, d: &PDiagram) -> String {
        coxeter_quotients::emit_diagram(d, self.format)
    }

    /// A comment line in the current format.
    fn comment(&self, text: &str) -> String {
        match self.format {
            DiagramFormat::Dot => format!("// {text}"),
            _ => format!("# {text}"),
        }
    }

    fn outcome(&self, input: &PDiagram, out: &QuotientOutcome, trace: bool) -> String {
        if self.json() {
            let mut v = json!({ "diagram": Self::diagram_value(&out.diagram) });
            if trace {
                v["trace"] = out.trace.iter().map(ToString::to_string).collect();
                v["classes"] = classes(input, out)
                    .into_iter()
                    .collect::<serde_json::Map<_, _>>()
                    .into();
            }
            return v.to_string();
        }
        let mut s = String::new();
        if trace {
            for step in &out.trace {
                let _ = writeln!(s, "{}", self.comment(&step.to_string()));
            }
            let map: Vec<String> = classes(input, out)
                .into_iter()
                .map(|(k, v)| format!("{k} -> {}", v.as_str().unwrap_or_default()))
                .collect();
            let _ = writeln!(
                s,
                "{}",
                self.comment(&format!("classes: {}", map.join(", ")))
            );
        }
        s.push_str(&self.diagram(&out.diagram));
        s
    }
}

fn classes(input: &PDiagram, out: &QuotientOutcome) -> Vec<(String, Value)> {
    (0..input.rank())
        .map(|i| (input.name(i).to_string(), Value::from(out.class_name(i))))
        .collect()
}

fn info(out: &Out, d: &PDiagram) -> String {
    let parts = |p: coxeter_quotients::Partition| -> Vec<Vec<String>> {
        p.names(d)
            .into_iter()
            .map(|b| b.into_iter().map(String::from).collect())
            .collect()
    };
    let free = parts(d.free_factors());
    let comps = parts(d.c_components(&d.all_generators()));
    let odd = parts(d.odd_components());
    let bases: Vec<(Vec<String>, String)> = enumerate_bases(d)
        .iter()
        .map(|b| {
            let names = b.members.names(d).into_iter().map(String::from).collect();
            (names, b.kind.to_string())
        })
        .collect();
    if out.json() {
        return json!({
            "rank": d.rank(),
            "edges": d.edge_count(),
            "free_factors": free,
            "components": comps,
            "odd_components": odd,
            "bases": bases.iter().map(|(m, t)| json!({"members": m, "type": t})).collect::<Vec<_>>(),
        })
        .to_string();
    }
    let line = |blocks: &[Vec<String>]| -> String {
        blocks
            .iter()
            .map(|b| braces(&b.iter().map(String::as_str).collect::<Vec<_>>()))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = String::new();
    let _ = writeln!(s, "rank: {}", d.rank());
    let _ = writeln!(s, "edges: {}", d.edge_count());
    let _ = writeln!(s, "free factors: {}", line(&free));
    let _ = writeln!(s, "components: {}", line(&comps));
    let _ = writeln!(s, "odd components: {}", line(&odd));
    let base_line: Vec<String> = bases
        .iter()
        .map(|(m, t)| {
            format!(
                "{} {t}",
                braces(&m.iter().map(String::as_str).collect::<Vec<_>>())
            )
        })
        .collect();
    let _ = write!(s, "bases: {}", base_line.join(" "));
    s
}

fn classify(out: &Out, d: &PDiagram, subset: Option<&str>) -> Result<String> {
    let rows: Vec<(Vec<&str>, Option<String>)> = match subset {
        Some(list) => {
            let sub = subset_arg(d, list)?;
            let t = coxeter_quotients::classify_irreducible(d, &sub)?;
            vec![(sub.names(d), t.map(|t| t.to_string()))]
        }
        None => component_types(d, &d.all_generators())
            .into_iter()
            .map(|(sub, t)| (sub.names(d), t.map(|t| t.to_string())))
            .collect(),
    };
    if out.json() {
        let v: Vec<Value> = rows
            .iter()
            .map(|(m, t)| json!({"members": m, "type": t}))
            .collect();
        return Ok(Value::from(v).to_string());
    }
    Ok(rows
        .iter()
        .map(|(m, t)| format!("{} {}", braces(m), t.as_deref().unwrap_or("infinite")))
        .collect::<Vec<_>>()
        .join("\n"))
}

fn bases(out: &Out, d: &PDiagram) -> Result<String> {
    let mut rows = Vec::new();
    for b in enumerate_bases(d) {
        let status = base_reduction_status(d, &b)?;
        rows.push((b.members.names(d), b.kind.to_string(), status.to_string()));
    }
    if out.json() {
        let v: Vec<Value> = rows
            .iter()
            .map(|(m, t, s)| json!({"members": m, "type": t, "status": s}))
            .collect();
        return Ok(Value::from(v).to_string());
    }
    Ok(rows
        .iter()
        .map(|(m, t, s)| format!("{} {t} {s}", braces(m)))
        .collect::<Vec<_>>()
        .join("\n"))
}

fn parse_relator(d: &PDiagram, text: &str) -> Result<PowerRelator> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    let [s, t, e] = parts.as_slice() else {
        bail!("relator `{text}` is not of the form \"s t d\"");
    };
    let e: u32 = e.parse().with_context(|| format!("exponent in `{text}`"))?;
    Ok(PowerRelator::by_name(d, s, t, e)?)
}

fn rank2(out: &Out, d: &PDiagram, stages: bool, greedy: bool, trace: bool) -> String {
    if greedy {
        return out.outcome(d, &rank2_greedy(d), trace);
    }
    let report = rank2_sequence(d);
    if out.json() {
        let mut v = json!({
            "ell": report.ell,
            "final": Out::diagram_value(&report.final_diagram),
        });
        if stages {
            v["stages"] = report.stages.iter().map(Out::diagram_value).collect();
        }
        if trace {
            v["trace"] = report
                .traces
                .iter()
                .map(|t| t.iter().map(ToString::to_string).collect::<Value>())
                .collect();
        }
        return v.to_string();
    }
    let mut s = String::new();
    if stages {
        for (k, stage) in report.stages.iter().enumerate() {
            if k > 0 && trace {
                for step in &report.traces[k - 1] {
                    let _ = writeln!(s, "{}", out.comment(&step.to_string()));
                }
            }
            let _ = writeln!(s, "{}", out.comment(&format!("stage {}", k + 1)));
            let _ = writeln!(s, "{}\n", out.diagram(stage));
        }
    } else {
        if trace {
            for step in report.traces.iter().flatten() {
                let _ = writeln!(s, "{}", out.comment(&step.to_string()));
            }
        }
        let _ = writeln!(s, "{}", out.diagram(&report.final_diagram));
    }
    s.push_str(&out.comment(&format!("class ℓ = {}", report.ell)));
    s
}

fn invariant_of(d: &PDiagram, kind: Kind) -> PDiagram {
    match kind {
        Kind::Raw => d.clone(),
        Kind::Binary => binary_invariant(d).diagram,
        Kind::Even => even_invariant(d).diagram,
        Kind::Rank2 => rank2_sequence(d).final_diagram,
    }
}

fn random(out: &Out, spec: &CorpusSpec) -> Result<String> {
    let corpus = generate_random(spec)?;
    if out.json() {
        return Ok(
            Value::from(corpus.iter().map(Out::diagram_value).collect::<Vec<_>>()).to_string(),
        );
    }
    Ok(corpus
        .iter()
        .enumerate()
        .map(|(k, d)| {
            format!(
                "{}\n{}",
                out.comment(&format!("diagram {}", k + 1)),
                out.diagram(d)
            )
        })
        .collect::<Vec<_>>()
        .join("\n\n"))
}

fn max_cosets() -> Result<usize> {
    match std::env::var("COX_MAX_COSETS") {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&n: &usize| n > 0)
            .ok_or_else(|| anyhow!("COX_MAX_COSETS must be a positive integer, found `{v}`")),
        Err(_) => Ok(DEFAULT_MAX_COSETS),
    }
}

fn run(cli: Cli) -> Result<(String, ExitCode)> {
    let format = if cli.json {
        DiagramFormat::Json
    } else if cli.dot {
        DiagramFormat::Dot
    } else {
        DiagramFormat::Text
    };
    let out = Out { format };
    let ok = |s: String| Ok((s, ExitCode::SUCCESS));
    match cli.command {
        Command::Info(i) => ok(info(&out, &load(&i.diagram)?)),
        Command::Classify { input, subset } => {
            ok(classify(&out, &load(&input.diagram)?, subset.as_deref())?)
        }
        Command::Bases(i) => ok(bases(&out, &load(&i.diagram)?)?),
        Command::Quotient { traced, relators } => {
            let d = load(&traced.input.diagram)?;
            let rels = relators
                .iter()
                .map(|r| parse_relator(&d, r))
                .collect::<Result<Vec<_>>>()?;
            let q = quotient_by_power_relators(&d, &rels)?;
            ok(out.outcome(&d, &q, traced.trace))
        }
        Command::Binary { traced, direct } => {
            let d = load(&traced.input.diagram)?;
            if direct {
                ok(out.outcome(&d, &QuotientOutcome::identity(&binary_direct(&d)), false))
            } else {
                ok(out.outcome(&d, &binary_invariant(&d), traced.trace))
            }
        }
        Command::Even { traced, direct } => {
            let d = load(&traced.input.diagram)?;
            if direct {
                ok(out.outcome(&d, &QuotientOutcome::identity(&even_direct(&d)), false))
            } else {
                ok(out.outcome(&d, &even_invariant(&d), traced.trace))
            }
        }
        Command::Family { traced, types } => {
            let d = load(&traced.input.diagram)?;
            let family: FamilySpec = types.parse()?;
            ok(out.outcome(&d, &family_quotient(&d, &family), traced.trace))
        }
        Command::Rank2 {
            traced,
            stages,
            greedy,
        } => {
            let d = load(&traced.input.diagram)?;
            ok(rank2(&out, &d, stages, greedy, traced.trace))
        }
        Command::Exchange { input, base } => {
            let d = load(&input.diagram)?;
            let members = subset_arg(&d, &base)?;
            let b = base_of(&d, &members)
                .ok_or_else(|| anyhow!("{} is not a base", braces(&members.names(&d))))?;
            ok(out.diagram(&exchange(&d, &b)?))
        }
        Command::Compare {
            first,
            second,
            kind,
        } => {
            let (a, b) = (load(&first)?, load(&second)?);
            let (a, b) = (invariant_of(&a, kind), invariant_of(&b, kind));
            Ok(match isomorphic(&a, &b) {
                Some(_) => ("isomorphic".into(), ExitCode::SUCCESS),
                None => ("non-isomorphic".into(), ExitCode::from(1)),
            })
        }
        Command::Random {
            seed,
            count,
            min_rank,
            max_rank,
            edge_probability,
            max_label,
            even,
        } => {
            let spec = CorpusSpec::new(seed, count)
                .ranks(min_rank, max_rank)
                .edge_probability(edge_probability);
            let spec = if even {
                spec.even_labels(max_label)
            } else {
                spec.labels((2..=max_label).map(|m| (m, 1)))
            };
            ok(random(&out, &spec)?)
        }
        Command::Verify => {
            let (report, passed) = verify::run(max_cosets()?, out.json());
            Ok((
                report,
                if passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                },
            ))
        }
        Command::Dot(i) => ok(coxeter_quotients::emit_diagram(
            &load(&i.diagram)?,
            DiagramFormat::Dot,
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            println!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
