//! Command line front end. [`run`] is pure: it takes the arguments and
//! returns the exit code and both output streams.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use skeleta_core::cohomology::{
    basis_by_degree, generating_family, is_class, morse_package, thom_class, EquivariantClass, Flavor,
};
use skeleta_core::crosssection::{canonical_levels, cross_section, kirwan_map, kirwan_preimage, CrossError, CrossSectionData};
use skeleta_core::instances::{builtin, builtin_names, Instance};
use skeleta_core::morse::{find_polarization, MorseData};
use skeleta_core::skeleton::{normally_straight, straightness, two_slices, validate, Skeleton, Subskeleton};
use skeleta_core::{Rational, Vector};

use crate::error::CliError;
use crate::format::{
    class_to_file, class_values_from_file, cross_from_file, cross_to_file, load_instance, parse_csv, poly_to_file,
    rational, vector, vector_strings, ClassFile, CrossClassFile,
};
use crate::report::{self, certificate_artifact, morse_artifact, package_artifact, straightness_artifact};
use crate::svg;

#[derive(Parser, Debug)]
#[command(name = "skeleta", version, about = "Exact computations on GKM-type 1-skeleta")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms and print the derived connection data
    Validate(Common),
    /// Morse function, indices and Betti numbers for a covector
    Betti(Common),
    /// Straightness constants or a loop with holonomy number not 1
    Straight(Common),
    /// 2-slices with normal straightness and Thom classes
    Slices(Common),
    /// A basis of each graded piece up to --max-degree
    Basis(Common),
    /// Generating family or the failure certificate
    Genfam(Common),
    /// Morse package verdict with slices and rank checks
    Package(Common),
    /// Cross-section data at --level or at every canonical level
    Cross(Common),
    /// Kirwan image of a class file at --level
    Kirwan {
        #[command(flatten)]
        common: Common,
        /// Class file
        class: PathBuf,
    },
    /// Kirwan preimage of a cross-section class file
    Preimage {
        #[command(flatten)]
        common: Common,
        /// Cross-section class file
        class: PathBuf,
    },
    /// Full report for one instance or every built-in
    Report(ReportArgs),
    /// Names of the built-in instances
    List,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Built-in name or path to an instance file
    pub instance: String,
    /// Covector as comma-separated rationals, e.g. 1/3,1
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Regular level of the Morse function, a rational
    #[arg(long, allow_hyphen_values = true)]
    pub level: Option<String>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    pub instance: Option<String>,
    #[arg(long, conflicts_with = "instance")]
    pub all: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Svg,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    json: Value,
    positive: bool,
    svg: Option<(Skeleton, Option<MorseData>)>,
}

impl Output {
    fn new(json: Value, positive: bool) -> Self {
        Output { json, positive, svg: None }
    }
}

struct Ctx {
    inst: Instance,
    skel: Skeleton,
    xi: Option<Vector>,
}

impl Ctx {
    fn load(c: &Common) -> Result<Self, CliError> {
        let inst = load_instance(&c.instance)?;
        let skel = validate(&inst.raw)?;
        let xi = c.xi.as_deref().map(parse_csv).transpose()?;
        Ok(Ctx { inst, skel, xi })
    }

    fn morse(&self) -> Result<MorseData, CliError> {
        let candidate = self.xi.as_ref().or((!self.inst.xi.0.is_empty()).then_some(&self.inst.xi));
        Ok(find_polarization(&self.skel, candidate)?)
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (out, format) = match &cli.command {
        Command::Report(r) => (r.out.clone(), r.format),
        Command::List => (None, OutputFormat::Json),
        Command::Kirwan { common, .. } | Command::Preimage { common, .. } => (common.out.clone(), common.format),
        Command::Validate(c)
        | Command::Betti(c)
        | Command::Straight(c)
        | Command::Slices(c)
        | Command::Basis(c)
        | Command::Genfam(c)
        | Command::Package(c)
        | Command::Cross(c) => (c.out.clone(), c.format),
    };
    let result = dispatch(&cli.command).and_then(|o| {
        let text = match format {
            OutputFormat::Json => serde_json::to_string_pretty(&o.json).map(|s| s + "\n").map_err(CliError::Json)?,
            OutputFormat::Svg => svg_for(&cli.command, &o)?,
        };
        Ok((text, o.positive))
    });
    match result {
        Ok((text, positive)) => {
            let code = if positive { 0 } else { 1 };
            match out {
                Some(path) => match std::fs::write(&path, &text) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                    Err(source) => err_outcome(&CliError::Write { path: path.display().to_string(), source }),
                },
                None => Outcome { code, stdout: text, stderr: String::new() },
            }
        }
        Err(e) => err_outcome(&e),
    }
}

fn err_outcome(e: &CliError) -> Outcome {
    Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn svg_for(cmd: &Command, o: &Output) -> Result<String, CliError> {
    let (skel, morse) = o.svg.as_ref().ok_or_else(|| CliError::Usage("this command has no SVG output".into()))?;
    let name = match cmd {
        Command::Report(r) => r.instance.clone().unwrap_or_default(),
        Command::Kirwan { common, .. } | Command::Preimage { common, .. } => common.instance.clone(),
        Command::Validate(c)
        | Command::Betti(c)
        | Command::Straight(c)
        | Command::Slices(c)
        | Command::Basis(c)
        | Command::Genfam(c)
        | Command::Package(c)
        | Command::Cross(c) => c.instance.clone(),
        Command::List => String::new(),
    };
    let inst = load_instance(&name)?;
    let positions = positions_by_index(skel, &inst).ok_or(svg::SvgError::MissingPositions)?;
    Ok(svg::render(skel, &positions, morse.as_ref())?)
}

/// Drawing positions reindexed to the skeleton's vertex order.
pub fn positions_by_index(skel: &Skeleton, inst: &Instance) -> Option<Vec<Vector>> {
    let ps = inst.positions.as_ref()?;
    let mut out = vec![Vector(Vec::new()); skel.num_vertices()];
    for (id, p) in inst.raw.vertices.iter().zip(ps) {
        out[skel.index_of(id)?] = p.clone();
    }
    Some(out)
}

fn ids(skel: &Skeleton, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&p| skel.id(p).to_string()).collect()
}

fn edge_ids(skel: &Skeleton, e: (usize, usize)) -> [String; 2] {
    [skel.id(e.0).to_string(), skel.id(e.1).to_string()]
}

fn dispatch(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Validate(c) => cmd_validate(c),
        Command::Betti(c) => cmd_betti(c),
        Command::Straight(c) => cmd_straight(c),
        Command::Slices(c) => cmd_slices(c),
        Command::Basis(c) => cmd_basis(c),
        Command::Genfam(c) => cmd_genfam(c),
        Command::Package(c) => cmd_package(c),
        Command::Cross(c) => cmd_cross(c),
        Command::Kirwan { common, class } => cmd_kirwan(common, class),
        Command::Preimage { common, class } => cmd_preimage(common, class),
        Command::Report(r) => cmd_report(r),
        Command::List => Ok(Output::new(json!(builtin_names()), true)),
    }
}

fn cmd_validate(c: &Common) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let s = &ctx.skel;
    let mut connection = Vec::new();
    for (p, q) in s.oriented_edges() {
        let k = s.slot(p, q).expect("edge");
        let rows: Vec<Value> = (0..s.valency())
            .map(|j| {
                json!({
                    "from": s.id(s.neighbors(p)[j]),
                    "to": s.id(s.neighbors(q)[s.theta(p, k, j)]),
                    "lambda": s.lambda(p, k, j).to_string(),
                    "shift": s.shift(p, k, j).to_string(),
                })
            })
            .collect();
        connection.push(json!({ "edge": edge_ids(s, (p, q)), "map": rows }));
    }
    let json = json!({
        "instance": ctx.inst.name,
        "valid": true,
        "dimension": s.dim(),
        "valency": s.valency(),
        "vertices": s.ids(),
        "edges": s.edges().len(),
        "connection": connection,
    });
    Ok(Output { json, positive: true, svg: Some((ctx.skel, None)) })
}

fn cmd_betti(c: &Common) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let morse = ctx.morse()?;
    let json = json!({
        "instance": ctx.inst.name,
        "xi": vector_strings(morse.xi()),
        "morse": morse_artifact(&ctx.skel, &morse),
        "betti": morse.betti(ctx.skel.valency()),
    });
    Ok(Output { json, positive: true, svg: Some((ctx.skel, Some(morse))) })
}

fn cmd_straight(c: &Common) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let s = straightness(&ctx.skel);
    let json = json!({
        "instance": ctx.inst.name,
        "straight": s.is_straight(),
        "artifact": straightness_artifact(&ctx.skel, &s),
    });
    Ok(Output { json, positive: s.is_straight(), svg: Some((ctx.skel, None)) })
}

fn cmd_slices(c: &Common) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let s = &ctx.skel;
    let subs = if s.valency() > 2 {
        two_slices(s)
    } else {
        let all: Vec<(usize, usize)> = s.edges();
        Subskeleton::from_edges(s, &all).into_iter().collect()
    };
    let mut out = Vec::new();
    for sub in &subs {
        let ns = normally_straight(s, sub);
        let thom = if ns.is_straight() { thom_class(s, sub).ok().map(|t| class_to_file(s, &t.class)) } else { None };
        out.push(json!({
            "vertices": ids(s, sub.vertices()),
            "edges": sub.edges(s).iter().map(|&e| edge_ids(s, e)).collect::<Vec<_>>(),
            "normally_straight": ns.is_straight(),
            "normal_artifact": straightness_artifact(s, &ns),
            "thom_class": thom,
        }));
    }
    let json = json!({ "instance": ctx.inst.name, "slices": out });
    Ok(Output { json, positive: true, svg: Some((ctx.skel, None)) })
}

fn cmd_basis(c: &Common) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let s = &ctx.skel;
    let max = c.max_degree.unwrap_or(s.valency() as u32);
    let degrees: Vec<Value> = (0..=max)
        .map(|m| {
            let b = basis_by_degree(s, m, &[]);
            json!({
                "degree": m,
                "dimension": b.len(),
                "basis": b.iter().map(|cl| class_to_file(s, cl)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let json = json!({ "instance": ctx.inst.name, "degrees": degrees });
    Ok(Output { json, positive: true, svg: Some((ctx.skel, None)) })
}

fn cmd_genfam(c: &Common) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let s = &ctx.skel;
    let morse = ctx.morse()?;
    let (json, positive) = match generating_family(s, &morse) {
        Ok(fam) => {
            let family: Vec<Value> = fam
                .ordered(&morse)
                .map(|(p, cl)| json!({ "vertex": s.id(p), "class": class_to_file(s, cl) }))
                .collect();
            let flavor = match fam.flavor {
                Flavor::Weak => "weak",
                Flavor::Strong => "strong",
            };
            (json!({ "instance": ctx.inst.name, "xi": vector_strings(morse.xi()), "flavor": flavor, "family": family }), true)
        }
        Err(f) => (
            json!({ "instance": ctx.inst.name, "xi": vector_strings(morse.xi()), "certificate": certificate_artifact(s, &f) }),
            false,
        ),
    };
    Ok(Output { json, positive, svg: Some((ctx.skel, Some(morse))) })
}

fn cmd_package(c: &Common) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let s = &ctx.skel;
    let morse = ctx.morse()?;
    let v = morse_package(s, &morse, c.max_degree.unwrap_or(s.valency() as u32 + 2));
    let art = package_artifact(s, &morse, &v);
    let json = json!({
        "instance": ctx.inst.name,
        "xi": vector_strings(morse.xi()),
        "straight": v.straight,
        "noncyclic": v.noncyclic,
        "pointed": v.pointed,
        "betti": v.betti,
        "has_morse_package": v.has_package,
        "straightness": straightness_artifact(s, &v.straightness),
        "certificate": art.certificate,
        "family": art.family,
        "slices": art.slices,
        "slices_agree": art.slices_agree,
        "rank_checks": art.rank_checks,
    });
    Ok(Output { json, positive: v.has_package, svg: Some((ctx.skel, Some(morse))) })
}

fn cross_json(s: &Skeleton, cs: &CrossSectionData) -> Value {
    json!({
        "level": cs.level.to_string(),
        "below": cs.below.map(|p| s.id(p)),
        "above": cs.above.map(|p| s.id(p)),
        "edges": cs.edges.iter().zip(&cs.forms).map(|(&e, f)| json!({
            "edge": edge_ids(s, e),
            "m": f.m.to_string(),
            "beta": poly_to_file(&f.beta),
        })).collect::<Vec<_>>(),
        "delta_minus": cs.delta_minus().iter().map(|&i| edge_ids(s, cs.edges[i])).collect::<Vec<_>>(),
        "delta_plus": cs.delta_plus().iter().map(|&i| edge_ids(s, cs.edges[i])).collect::<Vec<_>>(),
    })
}

fn level_arg(c: &Common) -> Result<Option<Rational>, CliError> {
    Ok(c.level.as_deref().map(rational).transpose()?)
}

fn cmd_cross(c: &Common) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let s = &ctx.skel;
    let morse = ctx.morse()?;
    let levels = match level_arg(c)? {
        Some(l) => vec![l],
        None => canonical_levels(&morse),
    };
    let sections = levels
        .iter()
        .map(|l| cross_section(s, &morse, l).map(|cs| cross_json(s, &cs)))
        .collect::<Result<Vec<_>, _>>()?;
    let json = json!({ "instance": ctx.inst.name, "xi": vector_strings(morse.xi()), "levels": sections });
    Ok(Output { json, positive: true, svg: Some((ctx.skel, Some(morse))) })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| crate::format::FormatError::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text).map_err(crate::format::FormatError::Json)?)
}

fn cmd_kirwan(c: &Common, path: &PathBuf) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let s = &ctx.skel;
    let morse = ctx.morse()?;
    let level = level_arg(c)?.ok_or_else(|| CliError::Usage("kirwan needs --level".into()))?;
    let file: ClassFile = read_json(path)?;
    let values = class_values_from_file(s, &file)?;
    is_class(s, &values)?;
    let f = EquivariantClass::new(file.degree, values)?;
    let cs = cross_section(s, &morse, &level)?;
    let g = kirwan_map(&morse, &f, &cs);
    let json = serde_json::to_value(cross_to_file(s, morse.xi(), &cs, &g)).map_err(CliError::Json)?;
    Ok(Output { json, positive: true, svg: Some((ctx.skel, Some(morse))) })
}

fn cmd_preimage(c: &Common, path: &PathBuf) -> Result<Output, CliError> {
    let ctx = Ctx::load(c)?;
    let s = &ctx.skel;
    let file: CrossClassFile = read_json(path)?;
    let file_xi = vector(&file.xi)?;
    let morse = match &ctx.xi {
        Some(x) if *x != file_xi => return Err(CliError::Usage("--xi differs from the covector in the class file".into())),
        _ => find_polarization(s, Some(&file_xi))?,
    };
    let level = match level_arg(c)? {
        Some(l) => l,
        None => rational(&file.level)?,
    };
    let cs = cross_section(s, &morse, &level)?;
    let g = cross_from_file(s, &cs, &file)?;
    let (json, positive) = match kirwan_preimage(s, &morse, &g, &cs) {
        Ok(f) => (json!({ "member": true, "class": class_to_file(s, &f) }), true),
        Err(e @ (CrossError::Critical { .. } | CrossError::Arity(..))) => return Err(e.into()),
        Err(e) => (json!({ "member": false, "reason": e.to_string() }), false),
    };
    Ok(Output { json, positive, svg: Some((ctx.skel, Some(morse))) })
}

fn cmd_report(r: &ReportArgs) -> Result<Output, CliError> {
    let xi = r.xi.as_deref().map(parse_csv).transpose()?;
    if r.all {
        if r.format == OutputFormat::Svg {
            return Err(CliError::Usage("--all has no SVG output".into()));
        }
        let insts: Vec<Instance> = builtin_names().iter().filter_map(|n| builtin(n)).collect();
        let reports: Vec<report::Report> = std::thread::scope(|scope| {
            let handles: Vec<_> =
                insts.iter().map(|inst| scope.spawn(|| report::build(inst, xi.as_ref(), r.max_degree))).collect();
            handles.into_iter().map(|h| h.join().expect("report thread panicked")).collect()
        });
        let positive = reports.iter().all(report::Report::is_positive);
        let json = serde_json::to_value(&reports).map_err(CliError::Json)?;
        return Ok(Output::new(json, positive));
    }
    let name = r.instance.as_deref().ok_or_else(|| CliError::Usage("report needs an instance or --all".into()))?;
    let inst = load_instance(name)?;
    let rep = report::build(&inst, xi.as_ref(), r.max_degree);
    if !rep.verdicts.valid {
        return Err(validate(&inst.raw).err().map(CliError::from).unwrap_or(CliError::Usage("invalid".into())));
    }
    let positive = rep.is_positive();
    let json = serde_json::to_value(&rep).map_err(CliError::Json)?;
    let skel = validate(&inst.raw)?;
    let morse = find_polarization(&skel, xi.as_ref().or((!inst.xi.0.is_empty()).then_some(&inst.xi))).ok();
    Ok(Output { json, positive, svg: Some((skel, morse)) })
}
