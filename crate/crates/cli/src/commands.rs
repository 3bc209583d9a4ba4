use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use unilie::enumeration::{classify, factorizations, known_isomorphism, sign_class_report, ClassifyOptions};
use unilie::families::{FamilySpec, FAMILY_NAMES};
use unilie::graph::{validate_uniform, ColoredDigraph};
use unilie::io::{self, Document};
use unilie::lie::{check_witness, IsoWitness, StructureTensor};
use unilie::par::{self, Budget, Exec};
use unilie::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_UNDETERMINED: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "unilie",
    version,
    about = "Uniform edge colorings and the two-step nilpotent Lie algebras they define"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Node visit limit shared by all exhaustive searches.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub budget: u64,
    /// Worker threads; 1 runs sequentially, 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
    Data,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph, algebra or witness file; `-` or nothing reads standard input.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether a graph or algebra file is uniform.
    Verify(InputArgs),
    /// Emit a member of a built-in family, e.g. `kneser:n=5,m=2`.
    Family {
        name: Option<String>,
        /// List the family grammars.
        #[arg(long)]
        list: bool,
        /// Emit the algebra file instead of the graph file.
        #[arg(long)]
        algebra: bool,
    },
    /// Structure of a uniform algebra: center, centralizers, ranks, J maps.
    Analyze(InputArgs),
    /// Decide isomorphism of two algebras, or check a given witness.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Witness file to check instead of searching.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Save a witness found by the search.
        #[arg(long)]
        save_witness: Option<PathBuf>,
    },
    /// Sign orbits of a colored support and their signed permutation classes.
    Orbit(InputArgs),
    /// Classify uniform algebras with at most `qmax` generators.
    Classify {
        #[arg(long, default_value_t = 5)]
        qmax: usize,
        /// Treat colorings related only by reversing arcs as different.
        #[arg(long)]
        strict_equivalence: bool,
    },
    /// Enumerate one-factorizations of K_n, or near-one-factorizations.
    Factorize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        near: bool,
    },
    /// Convert a file to another format.
    Export(InputArgs),
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Undetermined { .. } => EXIT_UNDETERMINED,
            Error::NotUniform(_) | Error::Singular | Error::NotAutomorphism(_) | Error::Overflow => EXIT_PROPERTY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(u8, String), Failure>;

pub fn run(cli: &Cli) -> Result<u8, Failure> {
    let budget = Budget::new(cli.budget);
    let exec = if cli.jobs == 1 { Exec::Sequential } else { Exec::Parallel };
    let (code, text) = if cli.jobs > 1 {
        par::with_threads(cli.jobs, || dispatch(cli, exec, &budget))?
    } else {
        dispatch(cli, exec, &budget)?
    };
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
    Ok(s)
}

fn read_doc(path: Option<&Path>) -> Result<Document, Failure> {
    Ok(io::read_any(&read_input(path)?)?)
}

fn algebra_of(doc: Document) -> Result<StructureTensor, Failure> {
    match doc {
        Document::Graph(g) => Ok(StructureTensor::from_graph(&g)),
        Document::Algebra(t) => Ok(t),
        Document::Witness { .. } => Err(Failure::usage("expected a graph or algebra, got a witness")),
    }
}

fn graph_of(doc: Document) -> Result<ColoredDigraph, Failure> {
    match doc {
        Document::Graph(g) => Ok(g),
        Document::Algebra(t) => Ok(t.to_graph()),
        Document::Witness { .. } => Err(Failure::usage("expected a graph or algebra, got a witness")),
    }
}

fn report(format: Format, human: &str, data: &Value) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(io::render_report(human, data)),
        Format::Data => Ok(format!("{}\n", serde_json::to_string_pretty(data).expect("plain data"))),
        Format::Dot => Err(Failure::usage("--format dot only applies to family and export")),
    }
}

fn dispatch(cli: &Cli, exec: Exec, budget: &Budget) -> Outcome {
    match &cli.command {
        Command::Verify(a) => verify(cli, a),
        Command::Family { name, list, algebra } => family(cli, name.as_deref(), *list, *algebra),
        Command::Analyze(a) => analyze(cli, a),
        Command::Iso {
            first,
            second,
            witness,
            save_witness,
        } => iso(cli, first, second, witness.as_deref(), save_witness.as_deref(), exec, budget),
        Command::Orbit(a) => orbit(cli, a, exec, budget),
        Command::Classify {
            qmax,
            strict_equivalence,
        } => classify_cmd(cli, *qmax, *strict_equivalence, exec, budget),
        Command::Factorize { n, near } => factorize(cli, *n, *near, exec, budget),
        Command::Export(a) => export(cli, a),
    }
}

fn verify(cli: &Cli, a: &InputArgs) -> Outcome {
    let (kind, rep) = match read_doc(a.input.as_deref())? {
        Document::Graph(g) => ("graph", validate_uniform(&g)),
        Document::Algebra(t) => ("algebra", t.verify_uniform_basis()),
        Document::Witness { .. } => return Err(Failure::usage("verify expects a graph or algebra file")),
    };
    let code = if rep.is_uniform { EXIT_OK } else { EXIT_PROPERTY };
    let data = json!({ "input": kind, "report": rep });
    Ok((code, report(cli.format, &rep.to_string(), &data)?))
}

fn family(cli: &Cli, name: Option<&str>, list: bool, algebra: bool) -> Outcome {
    if list {
        let mut out = String::new();
        for n in FAMILY_NAMES {
            let _ = writeln!(out, "{n}");
        }
        return Ok((EXIT_OK, out));
    }
    let name = name.ok_or_else(|| Failure::usage("family needs a name; see --list"))?;
    let spec: FamilySpec = name.parse()?;
    let g = spec.build()?;
    let text = match (cli.format, algebra) {
        (Format::Text, false) => io::write_graph(&g),
        (Format::Text, true) => io::write_algebra(&StructureTensor::from_graph(&g)),
        (Format::Dot, _) => io::write_dot(&g),
        (Format::Data, false) => format!("{}\n", serde_json::to_string_pretty(&io::graph_data(&g)).expect("data")),
        (Format::Data, true) => format!(
            "{}\n",
            serde_json::to_string_pretty(&io::algebra_data(&StructureTensor::from_graph(&g))).expect("data")
        ),
    };
    Ok((EXIT_OK, text))
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn analyze(cli: &Cli, a: &InputArgs) -> Outcome {
    let t = algebra_of(read_doc(a.input.as_deref())?)?;
    let rep = t.verify_uniform_basis();
    if !rep.is_uniform {
        let data = json!({ "report": rep });
        return Ok((EXIT_PROPERTY, report(cli.format, &rep.to_string(), &data)?));
    }
    let center = t.center()?.dim();
    let commutator = t.commutator().dim();
    let centralizers: Vec<usize> = (0..t.q()).map(|i| t.centralizer(i).map(|s| s.dim())).collect::<Result<_, _>>()?;
    let ad_ranks: Vec<usize> = (0..t.q()).map(|i| t.ad_rank(i)).collect::<Result<_, _>>()?;
    let j_ranks: Vec<usize> = (0..t.p())
        .map(|k| t.j_basis(k).and_then(|m| m.rank()))
        .collect::<Result<_, _>>()?;
    let gram = t.j_gram()?.to_rows();
    let htype = t.is_heisenberg_type()?;
    let nonsingular = t.nonsingular()?;
    let der = t.derivation_dimension()?;

    let support = t.support();
    let under = support.underlying()?;
    let mut geodesic = Vec::new();
    for comp in under.components() {
        if comp.len() < 2 {
            continue;
        }
        let mut colors: Vec<usize> = support
            .arcs()
            .iter()
            .filter(|arc| comp.contains(&arc.tail))
            .map(|arc| arc.color)
            .collect();
        colors.sort_unstable();
        colors.dedup();
        let tg = t.totally_geodesic(&comp, &colors)?;
        geodesic.push((comp, colors, tg));
    }

    let mut h = String::new();
    let _ = writeln!(h, "{rep}");
    let _ = writeln!(h, "dimension {} (q={}, p={})", t.dim(), t.q(), t.p());
    let _ = writeln!(h, "center dimension {center}, commutator dimension {commutator}");
    let _ = writeln!(h, "centralizer dimensions {:?}", centralizers);
    let _ = writeln!(h, "ad ranks {:?}", ad_ranks);
    let _ = writeln!(h, "J ranks {:?}", j_ranks);
    let _ = writeln!(h, "J gram matrix:");
    for row in &gram {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(h, "  {}", cells.join(""));
    }
    let _ = writeln!(h, "Heisenberg type: {htype}");
    let _ = writeln!(
        h,
        "nonsingular: {}",
        nonsingular.map_or("undecided".to_string(), |b| b.to_string())
    );
    let _ = writeln!(h, "derivation algebra dimension {der}");
    for (comp, colors, tg) in &geodesic {
        let _ = writeln!(
            h,
            "component v{{{}}} z{{{}}}: subalgebra {}, totally geodesic {}",
            list(comp),
            list(colors),
            tg.is_subalgebra,
            tg.is_tg
        );
    }
    let data = json!({
        "report": rep,
        "dimension": t.dim(),
        "center_dimension": center,
        "commutator_dimension": commutator,
        "centralizer_dimensions": centralizers,
        "ad_ranks": ad_ranks,
        "j_ranks": j_ranks,
        "j_gram": gram,
        "heisenberg_type": htype,
        "nonsingular": nonsingular,
        "derivation_dimension": der,
        "components": geodesic.iter().map(|(c, s, tg)| json!({
            "vertices": c.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "colors": s.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "is_subalgebra": tg.is_subalgebra,
            "is_totally_geodesic": tg.is_tg,
        })).collect::<Vec<_>>(),
    });
    Ok((EXIT_OK, report(cli.format, &h, &data)?))
}

fn iso(
    cli: &Cli,
    first: &Path,
    second: &Path,
    witness: Option<&Path>,
    save: Option<&Path>,
    exec: Exec,
    budget: &Budget,
) -> Outcome {
    let t1 = algebra_of(read_doc(Some(first))?)?;
    let t2 = algebra_of(read_doc(Some(second))?)?;
    if let Some(w) = witness {
        let (q, p, w) = io::read_witness(&read_input(Some(w))?)?;
        if (q, p) != (t1.q(), t1.p()) {
            return Err(Failure::usage(format!(
                "witness is for q={q} p={p}, first algebra has q={} p={}",
                t1.q(),
                t1.p()
            )));
        }
        let check = check_witness(&t1, &t2, &w)?;
        let human = match &check.failure {
            None => format!("witness verified ({})", w.kind()),
            Some(f) => format!("witness rejected: {f}"),
        };
        let data = json!({ "mode": "check", "kind": w.kind(), "check": check });
        let code = if check.ok { EXIT_OK } else { EXIT_PROPERTY };
        return Ok((code, report(cli.format, &human, &data)?));
    }
    if let Some(w) = known_isomorphism(&t1, &t2, exec, budget)? {
        if let Some(path) = save {
            fs::write(path, io::write_witness(t1.q(), t1.p(), &w))
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        }
        let lines = w.describe(t1.q());
        let how = match w {
            IsoWitness::SignedPerm { .. } => "a signed permutation",
            IsoWitness::GeneralLinear { .. } => "a stored general linear map",
        };
        let human = format!("isomorphic by {how}\n  {}", lines.join("\n  "));
        let data = json!({ "mode": "search", "verdict": "isomorphic", "kind": w.kind(), "witness": lines });
        return Ok((EXIT_OK, report(cli.format, &human, &data)?));
    }
    let reason = if (t1.p(), t1.q()) != (t2.p(), t2.q()) {
        Some(format!("(p,q) = ({},{}) vs ({},{})", t1.p(), t1.q(), t2.p(), t2.q()))
    } else {
        match (t1.nonsingular()?, t2.nonsingular()?) {
            (Some(a), Some(b)) if a != b => Some(format!("nonsingular: {a} vs {b}")),
            _ => {
                let (a, b) = (t1.derivation_dimension()?, t2.derivation_dimension()?);
                (a != b).then(|| format!("derivation algebra dimension: {a} vs {b}"))
            }
        }
    };
    match reason {
        Some(r) => {
            let data = json!({ "mode": "search", "verdict": "not isomorphic", "reason": r });
            Ok((EXIT_PROPERTY, report(cli.format, &format!("not isomorphic: {r}"), &data)?))
        }
        None => {
            let human = "undetermined: no known isomorphism and no separating invariant";
            let data = json!({ "mode": "search", "verdict": "undetermined" });
            Ok((EXIT_UNDETERMINED, report(cli.format, human, &data)?))
        }
    }
}

fn orbit(cli: &Cli, a: &InputArgs, exec: Exec, budget: &Budget) -> Outcome {
    let g = graph_of(read_doc(a.input.as_deref())?)?;
    let rep = sign_class_report(&g, exec, budget)?;
    let mut h = String::new();
    let _ = writeln!(h, "support {}", rep.support);
    let _ = writeln!(
        h,
        "{} diagonal sign orbits, {} signed permutation classes",
        rep.orbits.len(),
        rep.classes.len()
    );
    let mut classes = Vec::new();
    for (ci, c) in rep.classes.iter().enumerate() {
        let signs: Vec<String> = c.orbits.iter().map(|&o| rep.orbits[o].to_string()).collect();
        let _ = writeln!(
            h,
            "class {}: orbits {} | Heisenberg type {} | nonsingular {}",
            ci + 1,
            signs.join(" "),
            c.heisenberg_type,
            c.nonsingular.map_or("undecided".to_string(), |b| b.to_string())
        );
        let _ = writeln!(h, "  {}", c.representative);
        classes.push(json!({
            "orbits": signs,
            "heisenberg_type": c.heisenberg_type,
            "nonsingular": c.nonsingular,
            "representative": io::algebra_data(&c.representative),
            "witnesses": c.witnesses.iter().map(|w| w.describe(c.representative.q())).collect::<Vec<_>>(),
        }));
    }
    let data = json!({
        "support": io::graph_data(&rep.support),
        "orbits": rep.orbits.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "classes": classes,
    });
    Ok((EXIT_OK, report(cli.format, &h, &data)?))
}

fn classify_cmd(cli: &Cli, qmax: usize, strict: bool, exec: Exec, budget: &Budget) -> Outcome {
    let c = classify(qmax, &ClassifyOptions { exec, strict }, budget)?;
    let mut h = String::new();
    let _ = writeln!(h, "regular graphs with at most {qmax} vertices");
    h.push_str(&c.graphs_table());
    h.push('\n');
    h.push_str(&c.classes_table());
    for s in &c.separations {
        let _ = writeln!(h, "#{} and #{} differ in {}", s.first, s.second, s.reason);
    }
    let data = serde_json::to_value(&c).expect("plain data");
    Ok((EXIT_OK, report(cli.format, &h, &data)?))
}

fn factorize(cli: &Cli, n: usize, near: bool, exec: Exec, budget: &Budget) -> Outcome {
    let census = factorizations(n, near, exec, budget)?;
    let what = if near { "near-one-factorizations" } else { "one-factorizations" };
    let mut h = String::new();
    let _ = writeln!(
        h,
        "K{n}: {} labeled {what}, {} up to equivalence",
        census.labeled,
        census.classes.len()
    );
    for (i, g) in census.classes.iter().enumerate() {
        let mut factors = vec![Vec::new(); g.p()];
        for (a, b, c) in g.colored_edges() {
            factors[c].push(format!("{}{}", a + 1, b + 1));
        }
        let parts: Vec<String> = factors.iter().map(|f| f.join(" ")).collect();
        let _ = writeln!(h, "class {}: {}", i + 1, parts.join(" | "));
    }
    let data = json!({
        "n": n,
        "near": near,
        "labeled": census.labeled,
        "classes": census.classes.iter().map(io::graph_data).collect::<Vec<_>>(),
    });
    Ok((EXIT_OK, report(cli.format, &h, &data)?))
}

fn pretty(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("plain data"))
}

fn export(cli: &Cli, a: &InputArgs) -> Outcome {
    let text = match (read_doc(a.input.as_deref())?, cli.format) {
        (Document::Graph(g), Format::Text) => io::write_graph(&g),
        (Document::Graph(g), Format::Dot) => io::write_dot(&g),
        (Document::Graph(g), Format::Data) => pretty(&io::graph_data(&g)),
        (Document::Algebra(t), Format::Text) => io::write_algebra(&t),
        (Document::Algebra(t), Format::Dot) => io::write_dot(&t.support()),
        (Document::Algebra(t), Format::Data) => pretty(&io::algebra_data(&t)),
        (Document::Witness { q, p, witness }, Format::Text) => io::write_witness(q, p, &witness),
        (Document::Witness { q, witness, .. }, Format::Data) => {
            pretty(&json!({ "kind": witness.kind(), "images": witness.describe(q) }))
        }
        (Document::Witness { .. }, Format::Dot) => return Err(Failure::usage("a witness has no DOT form")),
    };
    Ok((EXIT_OK, text))
}
