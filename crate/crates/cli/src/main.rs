use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperspec::macaulay::leading_coefficients;
use hyperspec::poly::numeric_roots;
use hyperspec::repro::{run_repro, ReproOptions};
use hyperspec::spectral::{
    complete3_spectrum, cylinder_spectrum, degree_bounds_check, eigenpair_residual, greedy_color,
    lambda_max, ultracube_sporadic, FamilyEigenvalue, FamilySpectrum, LambdaMaxOptions,
};
use hyperspec::traces::{coefficients_via_traces, generalized_trace};
use hyperspec::{charpoly, charpoly_with, CharPolyOptions, DetMethod, Family, Hypergraph};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hyperspec", version, about = "Exact spectral computations for uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the parallel engines (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct Input {
    /// Edge-list file (`-` reads standard input).
    #[arg(long, conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Named family, e.g. `complete:n=4,k=3` or `cylinder:parts=2,3`.
    #[arg(long)]
    family: Option<String>,
    /// Uniformity, used when the family leaves it out.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Clone)]
struct CharPolyArgs {
    #[arg(long, default_value = "auto")]
    method: DetMethod,
    /// Number of interpolation points per block (default: degree + 1).
    #[arg(long)]
    eval_points: Option<usize>,
    /// Entry size above which blocks switch to modular determinants.
    #[arg(long, default_value_t = 62)]
    modular_threshold_bits: u64,
    /// Largest Macaulay matrix to attempt.
    #[arg(long, default_value_t = hyperspec::macaulay::DEFAULT_MAX_MONOMIALS)]
    max_monomials: u128,
}

impl CharPolyArgs {
    fn options(&self, with_minor: bool) -> CharPolyOptions {
        CharPolyOptions {
            method: self.method,
            eval_points: self.eval_points,
            modular_threshold_bits: self.modular_threshold_bits,
            with_minor,
            max_monomials: self.max_monomials,
            ..CharPolyOptions::default()
        }
    }
}

#[derive(Args, Clone)]
struct LambdaArgs {
    /// Width of the certified enclosure.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
}

impl LambdaArgs {
    fn options(&self) -> LambdaMaxOptions {
        LambdaMaxOptions {
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    /// Closed-walk traces.
    Traces,
    /// Full characteristic polynomial.
    Resultant,
    /// Power sums of the adjacency matrix of the eigen system.
    Walks,
}

#[derive(Subcommand)]
enum Command {
    /// Writes a hypergraph as an edge list.
    Gen {
        #[command(flatten)]
        input: Input,
        /// Draw a random hypergraph on this many vertices instead.
        #[arg(long)]
        random: Option<usize>,
        /// Edge probability for `--random`.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 2012)]
        seed: u64,
    },
    /// Exact characteristic polynomial.
    Charpoly {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: CharPolyArgs,
        /// Also reconstruct the determinant of the reduced minor.
        #[arg(long)]
        minor: bool,
        /// Include stage timings in the output.
        #[arg(long)]
        timings: bool,
    },
    /// Leading coefficients by codegree.
    Coeffs {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        max_codegree: usize,
        #[arg(long, value_enum, default_value_t = Route::Traces)]
        route: Route,
        /// Largest codegree the trace route accepts (default: k + 1).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Generalized traces Tr_0 up to the given codegree.
    Traces {
        #[command(flatten)]
        input: Input,
        /// Defaults to k + 1.
        #[arg(long)]
        max_codegree: Option<usize>,
    },
    /// Numeric eigenvalues with multiplicities from the characteristic polynomial.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: CharPolyArgs,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Largest eigenvalue with a certified enclosure.
    LambdaMax {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        lambda: LambdaArgs,
    },
    /// Checks average degree <= lambda_max <= maximum degree.
    Bounds {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        lambda: LambdaArgs,
    },
    /// Greedy weak coloring checked against floor(lambda_max) + 1.
    Color {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        lambda: LambdaArgs,
    },
    /// Explicit eigenpairs of a named family.
    Family {
        /// Family specification; `--family` works too.
        spec: Option<String>,
        #[arg(long = "family")]
        family: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Checks a candidate eigenpair.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Eigenvalue, e.g. `1.2599` or `-0.5+0.866i`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Comma-separated vector entries in vertex order.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Recomputes every headline claim and compares it with its expected value.
    Repro {
        /// Compute the four-uniform simplex constant from power sums only.
        #[arg(long)]
        quick: bool,
        /// Also run the ultracube characteristic polynomial.
        #[arg(long)]
        stretch: bool,
        #[arg(long, default_value_t = 2012)]
        seed: u64,
        /// Run only claims whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        /// Include runtimes in JSON output.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch,
}

impl From<hyperspec::Error> for Failure {
    fn from(e: hyperspec::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load(input: &Input) -> Result<Hypergraph, Failure> {
    let h = match (&input.file, &input.family) {
        (Some(path), None) => {
            let text = if path.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(path)
            }
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let h = Hypergraph::parse_edge_list(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            if let Some(k) = input.k {
                if k != h.k() {
                    return Err(hyperspec::Error::UniformityMismatch(h.k(), k).into());
                }
            }
            h
        }
        (None, Some(spec)) => Family::parse(spec, input.k)?.build()?,
        _ => return Err(Failure::Usage("give exactly one of --file or --family".into())),
    };
    Ok(h)
}

fn emit(format: Format, text: String, value: Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn complex_text(z: Complex64) -> String {
    if z.im.abs() < 1e-12 {
        format!("{:.12}", z.re)
    } else {
        format!("{:.12}{:+.12}i", z.re, z.im)
    }
}

fn coeff_list(coeffs: &[BigInt]) -> Value {
    Value::Array(coeffs.iter().map(|c| Value::String(c.to_string())).collect())
}

fn gen(format: Format, input: &Input, random: Option<usize>, p: f64, seed: u64) -> Outcome {
    let h = match random {
        Some(n) => {
            let k = input
                .k
                .ok_or_else(|| Failure::Usage("--random needs --k".into()))?;
            Hypergraph::random(n, k, p, &mut ChaCha8Rng::seed_from_u64(seed))?
        }
        None => load(input)?,
    };
    emit(format, h.to_edge_list_string(), to_value(&h));
    Ok(())
}

fn charpoly_cmd(format: Format, input: &Input, opts: &CharPolyArgs, minor: bool, timings: bool) -> Outcome {
    let h = load(input)?;
    let res = charpoly_with(&h, &opts.options(minor))?;
    let mut text = format!("{}\n", res.phi);
    if let Some(m) = &res.det_m_prime {
        let _ = writeln!(text, "minor determinant: {m}");
    }
    if timings {
        for t in &res.timings {
            let _ = writeln!(text, "{} {}: {:.1} ms", t.stage, t.index, t.millis);
        }
    }
    let mut value = json!({
        "n": h.n(),
        "k": h.k(),
        "degree": res.phi.degree(),
        "polynomial": res.phi.to_string(),
        "coefficients": res.phi,
        "matrix_size": res.matrix_size,
        "minor_size": res.minor_size,
        "largest_block": res.largest_block,
        "method": res.method,
        "primes": res.primes,
    });
    if let Some(m) = &res.det_m_prime {
        value["minor_determinant"] = to_value(m);
    }
    if timings {
        value["timings"] = to_value(&res.timings);
    }
    emit(format, text, value);
    Ok(())
}

fn coeffs_cmd(format: Format, input: &Input, max: usize, route: Route, cap: Option<usize>) -> Outcome {
    let h = load(input)?;
    let coeffs = match route {
        Route::Traces => coefficients_via_traces(&h, max, cap)?,
        Route::Resultant => {
            let phi = charpoly(&h)?;
            (0..=max).map(|d| phi.codegree_coeff(d)).collect()
        }
        Route::Walks => leading_coefficients(&h, max)?,
    };
    let mut text = String::new();
    for (d, c) in coeffs.iter().enumerate() {
        let _ = writeln!(text, "codegree {d}: {c}");
    }
    emit(format, text, json!({ "n": h.n(), "k": h.k(), "coefficients": coeff_list(&coeffs) }));
    Ok(())
}

fn traces_cmd(format: Format, input: &Input, max: Option<usize>) -> Outcome {
    let h = load(input)?;
    let max = max.unwrap_or(h.k() + 1);
    let traces = (0..=max)
        .map(|d| generalized_trace(&h, d))
        .collect::<hyperspec::Result<Vec<_>>>()?;
    let mut text = String::new();
    for (d, t) in traces.iter().enumerate() {
        let _ = writeln!(text, "Tr_{d} = {t}");
    }
    emit(format, text, json!({ "n": h.n(), "k": h.k(), "traces": coeff_list(&traces) }));
    Ok(())
}

fn spectrum_cmd(format: Format, input: &Input, opts: &CharPolyArgs, tol: f64) -> Outcome {
    let h = load(input)?;
    let phi = charpoly_with(&h, &opts.options(false))?.phi;
    let roots = numeric_roots(&phi, tol)?;
    let mut text = format!("characteristic polynomial: {phi}\n");
    for r in &roots.roots {
        let _ = writeln!(
            text,
            "{}  multiplicity {}  residual {:.1e}",
            complex_text(r.value),
            r.multiplicity,
            r.residual
        );
    }
    let _ = writeln!(text, "spectral radius: {:.12}", roots.spectral_radius());
    emit(
        format,
        text,
        json!({
            "polynomial": phi.to_string(),
            "roots": roots.roots,
            "spectral_radius": roots.spectral_radius(),
        }),
    );
    Ok(())
}

fn lambda_cmd(format: Format, input: &Input, args: &LambdaArgs) -> Outcome {
    let h = load(input)?;
    let r = lambda_max(&h, &args.options())?;
    let text = format!(
        "lambda_max = {:.12} in [{:.12}, {:.12}] after {} iterations{}\n",
        r.lambda,
        r.lower,
        r.upper,
        r.iterations,
        if r.converged { "" } else { " (not converged)" }
    );
    emit(format, text, to_value(&r));
    if r.converged {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn bounds_cmd(format: Format, input: &Input, args: &LambdaArgs) -> Outcome {
    let h = load(input)?;
    let b = degree_bounds_check(&h, &args.options())?;
    let text = format!(
        "d = {} ({:.12}) <= lambda_max = {:.12} <= Delta = {}: {}\n",
        b.average_degree_exact,
        b.average_degree,
        b.lambda_max,
        b.max_degree,
        if b.pass { "holds" } else { "FAILS" }
    );
    let value = json!({
        "d": b.average_degree,
        "d_exact": b.average_degree_exact,
        "lambda_max": b.lambda_max,
        "Delta": b.max_degree,
        "pass": b.pass,
    });
    emit(format, text, value);
    if b.pass {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn color_cmd(format: Format, input: &Input, args: &LambdaArgs) -> Outcome {
    let h = load(input)?;
    let c = greedy_color(&h);
    let r = lambda_max(&h, &args.options())?;
    let bound = (r.lambda + args.tol).floor() as usize + 1;
    let proper = c.is_proper(&h);
    let pass = proper && c.count <= bound;
    let colors: Vec<String> = c.colors.iter().map(|x| x.to_string()).collect();
    let text = format!(
        "colors: {}\ncount {} <= floor(lambda_max) + 1 = {}: {}\nproper: {proper}\n",
        colors.join(" "),
        c.count,
        bound,
        if c.count <= bound { "holds" } else { "FAILS" }
    );
    let mut value = to_value(&c);
    value["lambda_max"] = json!(r.lambda);
    value["bound"] = json!(bound);
    value["proper"] = json!(proper);
    value["pass"] = json!(pass);
    emit(format, text, value);
    if pass {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn family_cmd(format: Format, spec: &str, k: Option<usize>) -> Outcome {
    let family = Family::parse(spec, k)?;
    let spectrum = match &family {
        Family::SingleEdge { k } => cylinder_spectrum(&vec![1; *k])?,
        Family::Cylinder { parts } => cylinder_spectrum(parts)?,
        Family::Complete { n, k: 3 } => complete3_spectrum(*n)?,
        Family::Ultracube { k, d } => {
            let h = family.build()?;
            let pair = ultracube_sporadic(*k, *d)?;
            let residual = eigenpair_residual(&h, pair.lambda, &pair.x)?;
            FamilySpectrum {
                family: spec.to_string(),
                construction: "root of the dimension at the all-ones corner".into(),
                values: vec![FamilyEigenvalue {
                    value: pair.lambda,
                    description: format!("{d}^(1/{k})"),
                    vector: pair.x,
                    residual,
                }],
            }
        }
        _ => {
            return Err(Failure::Usage(format!(
                "no explicit eigenpairs for `{spec}`; use single-edge, cylinder, complete with k=3, or ultracube"
            )))
        }
    };
    let mut text = format!("{}\n", spectrum.construction);
    for v in &spectrum.values {
        let _ = writeln!(
            text,
            "{}  residual {:.1e}  {}",
            complex_text(v.value),
            v.residual,
            v.description
        );
    }
    emit(format, text, to_value(&spectrum));
    Ok(())
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| Failure::Usage(format!("`{s}` is not a number")))
}

fn verify_cmd(format: Format, input: &Input, lambda: &str, x: &str, tol: f64) -> Outcome {
    if !(tol > 0.0) {
        return Err(Failure::Usage(format!("tolerance must be positive, got {tol}")));
    }
    let h = load(input)?;
    let lambda = parse_complex(lambda)?;
    let x = x.split(',').map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    let residual = eigenpair_residual(&h, lambda, &x)?;
    let pass = residual <= tol;
    let text = format!(
        "residual {residual:.3e} {} tolerance {tol:e}: {}\n",
        if pass { "<=" } else { ">" },
        if pass { "eigenpair" } else { "NOT an eigenpair" }
    );
    emit(format, text, json!({ "residual": residual, "tol": tol, "pass": pass }));
    if pass {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn repro_cmd(format: Format, opts: ReproOptions, timings: bool) -> Outcome {
    let report = run_repro(&opts);
    let mut text = String::new();
    for c in &report.claims {
        let status = match (c.matched, c.gating) {
            (true, _) => "MATCH",
            (false, true) => "MISMATCH",
            (false, false) => "FLAGGED",
        };
        let _ = writeln!(
            text,
            "{:<28} {:<8} {:>10.1} ms  expected: {}  computed: {}",
            c.id, status, c.runtime_ms, c.expected, c.computed
        );
    }
    let mut value = to_value(&report);
    if !timings {
        if let Some(Value::Array(claims)) = value.get_mut("claims") {
            for claim in claims {
                if let Value::Object(map) = claim {
                    map.remove("runtime_ms");
                }
            }
        }
    }
    emit(format, text, value);
    if report.all_gating_matched() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let format = cli.format;
    match cli.command {
        Command::Gen {
            input,
            random,
            p,
            seed,
        } => gen(format, &input, random, p, seed),
        Command::Charpoly {
            input,
            opts,
            minor,
            timings,
        } => charpoly_cmd(format, &input, &opts, minor, timings),
        Command::Coeffs {
            input,
            max_codegree,
            route,
            cap,
        } => coeffs_cmd(format, &input, max_codegree, route, cap),
        Command::Traces { input, max_codegree } => traces_cmd(format, &input, max_codegree),
        Command::Spectrum { input, opts, tol } => spectrum_cmd(format, &input, &opts, tol),
        Command::LambdaMax { input, lambda } => lambda_cmd(format, &input, &lambda),
        Command::Bounds { input, lambda } => bounds_cmd(format, &input, &lambda),
        Command::Color { input, lambda } => color_cmd(format, &input, &lambda),
        Command::Family { spec, family, k } => match spec.or(family) {
            Some(spec) => family_cmd(format, &spec, k),
            None => Err(Failure::Usage("missing family specification".into())),
        },
        Command::Verify {
            input,
            lambda,
            x,
            tol,
        } => verify_cmd(format, &input, &lambda, &x, tol),
        Command::Repro {
            quick,
            stretch,
            seed,
            only,
            timings,
        } => repro_cmd(
            format,
            ReproOptions {
                seed,
                quick,
                stretch,
                only,
            },
            timings,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => ExitCode::from(2),
    }
}
