use std::path::{Path, PathBuf};
use std::time::Instant;

use specrewriter_core::convert::{convert_solution, generate_converter, validate, ConvertError, Validation};
use specrewriter_core::essence::params::print_bindings;
use specrewriter_core::essence::print_spec;
use specrewriter_core::eval::{solve_with, Env, Instance, SolveOptions};
use specrewriter_core::graph::write_host_graph;
use specrewriter_core::instances::{
    edge_list_to_param, generate_grid, read_edge_list_with, ConfigError, GridConfig, Orientation,
};
use specrewriter_core::rules::{ReformulateError, Reformulator};

use crate::verify::{verify_all, Subject, VerifyOptions};
use crate::*;

pub struct RewriteArgs {
    pub input: PathBuf,
    pub out: Option<PathBuf>,
    pub rules: Vec<PathBuf>,
    pub emit_host: bool,
    pub fuel: Option<usize>,
}

fn reformulator(rules: &[PathBuf], fuel: Option<usize>) -> Result<Reformulator, Failure> {
    let r = Reformulator::new(load_rules(rules)?);
    Ok(match fuel {
        Some(f) => r.with_fuel(f),
        None => r,
    })
}

fn reformulate_failure(e: ReformulateError) -> Failure {
    let code = match &e {
        ReformulateError::NotApplicable(_) => EXIT_NOT_APPLICABLE,
        ReformulateError::Rules(_) | ReformulateError::InvalidRules(_) => EXIT_PARSE,
        _ => EXIT_ENGINE,
    };
    Failure::new(code, e.to_string())
}

fn host_path(args: &RewriteArgs, which: &str) -> PathBuf {
    let base = args.out.as_deref().unwrap_or(&args.input);
    base.with_file_name(format!("{}.{which}.host", stem(base)))
}

/// Exit 3 leaves the output equal to the input.
pub fn rewrite(args: &RewriteArgs) -> CmdResult {
    let text = read_text(&args.input)?;
    let spec = load_spec(&args.input)?;
    let r = reformulator(&args.rules, args.fuel)?;
    let started = Instant::now();
    match r.reformulate(&spec, &stem(&args.input)) {
        Ok(out) => {
            emit(args.out.as_deref(), &print_spec(&out.rewritten))?;
            if args.emit_host {
                write_text(&host_path(args, "before"), &write_host_graph(&out.host_before))?;
                write_text(&host_path(args, "after"), &write_host_graph(&out.host_after))?;
            }
            eprintln!(
                "rewrote {} with {} rule applications in {:.1} ms",
                args.input.display(),
                out.report.len(),
                started.elapsed().as_secs_f64() * 1000.0
            );
            Ok(EXIT_OK)
        }
        Err(ReformulateError::NotApplicable(why)) => {
            emit(args.out.as_deref(), &text)?;
            eprintln!("not applicable ({why}); input copied unchanged");
            Ok(EXIT_NOT_APPLICABLE)
        }
        Err(e) => Err(reformulate_failure(e)),
    }
}

pub struct SolveArgs {
    pub spec: PathBuf,
    pub param: PathBuf,
    pub out: Option<PathBuf>,
    pub limit: Option<usize>,
    pub max_ground: u128,
}

/// Prints `N solutions` and writes `<param>-solutionNNNNNN.solution` files.
pub fn solve(args: &SolveArgs) -> CmdResult {
    let spec = load_spec(&args.spec)?;
    let inst = load_instance(&args.param)?;
    let sols = solve_with(&spec, &inst, SolveOptions { limit: args.limit, max_ground: args.max_ground })
        .map_err(eval_failure)?;
    let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    for (i, s) in sols.iter().enumerate() {
        let path = dir.join(format!("{}-solution{:06}.solution", stem(&args.param), i + 1));
        write_text(&path, &print_bindings(s.iter().map(|(k, v)| (k.as_str(), v))))?;
    }
    let noun = if sols.len() == 1 { "solution" } else { "solutions" };
    println!("{} {noun}", sols.len());
    Ok(EXIT_OK)
}

fn convert_failure(e: ConvertError) -> Failure {
    match e {
        ConvertError::NoConversionNeeded | ConvertError::Unsupported(_) => Failure::new(EXIT_NOT_APPLICABLE, e.to_string()),
        ConvertError::DomainMismatch(_) => Failure::new(EXIT_VERIFY, e.to_string()),
        ConvertError::Eval(e) => eval_failure(e),
    }
}

pub fn gen_converter(original: &Path, rewritten: &Path, out: Option<&Path>) -> CmdResult {
    let (o, r) = (load_spec(original)?, load_spec(rewritten)?);
    match generate_converter(&o, &r) {
        Ok(conv) => {
            emit(out, &print_spec(&conv))?;
            Ok(EXIT_OK)
        }
        Err(e) => Err(convert_failure(e)),
    }
}

fn single_find(spec: &specrewriter_core::essence::Specification) -> Result<String, Failure> {
    let finds: Vec<_> = spec.finds().collect();
    match finds.as_slice() {
        [f] => Ok(f.name.clone()),
        _ => Err(Failure::new(EXIT_PARSE, format!("expected exactly one find, found {}", finds.len()))),
    }
}

fn solution_value(path: &Path, name: &str) -> Result<specrewriter_core::Value, Failure> {
    let sol = load_instance(path)?;
    sol.bindings
        .get(name)
        .cloned()
        .ok_or_else(|| Failure::new(EXIT_PARSE, format!("{}: no value for `{name}`", path.display())))
}

/// Converts a rewritten solution directly into the original find's type.
pub fn convert(original: &Path, param: &Path, solution: &Path, out: Option<&Path>) -> CmdResult {
    let spec = load_spec(original)?;
    let inst = load_instance(param)?;
    let find = single_find(&spec)?;
    let value = solution_value(solution, &find)?;
    let env = Env::for_instance(&spec, &inst, specrewriter_core::eval::DEFAULT_MAX_GROUND).map_err(eval_failure)?;
    let domain = spec.declaration(&find).and_then(|d| d.domain()).unwrap();
    let converted = convert_solution(&value, domain, &env).map_err(convert_failure)?;
    emit(out, &print_bindings([(find.as_str(), &converted)]))?;
    Ok(EXIT_OK)
}

pub fn validate_cmd(original: &Path, param: &Path, solution: &Path) -> CmdResult {
    let spec = load_spec(original)?;
    let inst = load_instance(param)?;
    let find = single_find(&spec)?;
    let value = solution_value(solution, &find)?;
    match validate(&spec, &inst, &value).map_err(convert_failure)? {
        Validation::Valid => {
            println!("Valid");
            Ok(EXIT_OK)
        }
        Validation::Invalid(failing) => {
            println!("Invalid");
            for f in failing {
                println!("  {f}");
            }
            Ok(EXIT_VERIFY)
        }
    }
}

pub struct GridArgs {
    pub grid: Option<PathBuf>,
    pub seed: Option<u64>,
    pub directed: bool,
}

fn config_failure(e: ConfigError) -> Failure {
    Failure::new(EXIT_PARSE, e.to_string())
}

/// The configured grid, or the desk grid by default. `None` when the
/// Cartesian product is empty.
pub fn load_grid(args: &GridArgs) -> Result<Option<GridConfig>, Failure> {
    let mut cfg = match &args.grid {
        Some(p) => toml::from_str::<GridConfig>(&read_text(p)?)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", p.display())))?,
        None => GridConfig::desk(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.directed |= args.directed;
    let colours = if cfg.colour_offsets.is_empty() { &cfg.colours_multipliers } else { &cfg.colour_offsets };
    if cfg.n_values.is_empty() || cfg.edge_density_percents.is_empty() || cfg.cpn_values.is_empty() || colours.is_empty()
    {
        return Ok(None);
    }
    Ok(Some(cfg))
}

pub fn grid_instances(args: &GridArgs) -> Result<Vec<(String, Instance)>, Failure> {
    let Some(cfg) = load_grid(args)? else { return Ok(Vec::new()) };
    Ok(generate_grid(&cfg).map_err(config_failure)?.into_iter().map(|g| (g.label(), g.instance())).collect())
}

pub struct EdgeListArgs {
    pub path: PathBuf,
    pub number_colours: i64,
    pub colours_per_node: i64,
}

/// Writes one `.param` per grid point into `out` (a directory), or a single
/// parameter file from an edge list.
pub fn gen_instances(grid: &GridArgs, edges: Option<&EdgeListArgs>, out: Option<&Path>) -> CmdResult {
    if let Some(e) = edges {
        let orientation = if grid.directed { Orientation::Directed } else { Orientation::Undirected };
        let g = read_edge_list_with(&read_text(&e.path)?, orientation)
            .map_err(|err| Failure::new(EXIT_PARSE, format!("{}: {err}", e.path.display())))?;
        emit(out, &edge_list_to_param(&g, e.number_colours, e.colours_per_node).to_param_text())?;
        return Ok(EXIT_OK);
    }
    let instances = grid_instances(grid)?;
    let dir = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("instances"));
    for (id, inst) in &instances {
        write_text(&dir.join(format!("{id}.param")), &inst.to_param_text())?;
    }
    println!("{} instances written to {}", instances.len(), dir.display());
    Ok(EXIT_OK)
}

pub struct VerifyArgs {
    pub original: PathBuf,
    pub param: Option<PathBuf>,
    pub grid: GridArgs,
    pub rules: Vec<PathBuf>,
    pub fuel: Option<usize>,
    pub max_ground: u128,
    pub out: Option<PathBuf>,
}

/// Prints the report table and machine lines (also to `out` if given).
pub fn verify(args: &VerifyArgs) -> CmdResult {
    let original = load_spec(&args.original)?;
    let r = reformulator(&args.rules, args.fuel)?;
    let rewritten = r.reformulate(&original, &stem(&args.original)).map_err(reformulate_failure)?;
    let converter = generate_converter(&original, &rewritten.rewritten).map_err(convert_failure)?;
    let instances = match &args.param {
        Some(p) => vec![(stem(p), load_instance(p)?)],
        None => grid_instances(&args.grid)?,
    };
    let subject = Subject {
        original: &original,
        rewritten: &rewritten.rewritten,
        converter: Some(&converter),
        applications: rewritten.report.len(),
    };
    let report = verify_all(&subject, &instances, VerifyOptions { max_ground: args.max_ground, check_converter_spec: true });
    let text = format!("{}\n{}", report.table(), report.machine_lines());
    print!("{text}");
    if let Some(p) = &args.out {
        write_text(p, &text)?;
    }
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        eprint!("{}", report.failure_details());
        Ok(EXIT_VERIFY)
    }
}
