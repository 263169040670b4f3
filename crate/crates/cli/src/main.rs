//! `orbitdh`: exact DH densities, multiplicities and orbit sampling from the
//! command line. Data goes to stdout, diagnostics to stderr.

mod output;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbitdh_core::dh::{self, DhEngine};
use orbitdh_core::orbit::{self, BinSpec, OrbitSampleConfig};
use orbitdh_core::{kostant, num, polytope, weyl, Error, Rational, RootSystem, RootVector, Weight};
use rayon::prelude::*;
use serde_json::{json, Value};

use output::{big, decimal, envelope, join, plain, rational, rationals, weight};

#[derive(Parser, Debug)]
#[command(name = "orbitdh", version, about = "Exact Duistermaat-Heckman densities of regular coadjoint orbits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, symmetrizer and positive roots
    Roots(TypeArgs),
    /// Weyl group elements with length and sign
    Weyl(TypeArgs),
    /// Kostant partition count p(x)
    Partition(RootArgs),
    /// Normalized fiber-polytope volume P(x)
    Volume(RootArgs),
    /// Exact density at mu for the orbit through lambda
    Density(PointArgs),
    /// Weight multiplicity of mu in the representation of highest weight lambda
    Multiplicity(PointArgs),
    /// All weights of the representation with their multiplicities
    Support(LambdaArgs),
    /// Scaled multiplicities m(k lambda, k mu) / k^s against the density
    Converge(ConvergeArgs),
    /// Density on a regular grid over the bounding box of the orbit hull (rank 2)
    Grid(GridArgs),
    /// Monte Carlo histogram of the moment map for SU(2) or SU(3)
    SampleOrbit(SampleArgs),
    /// Pfaffian sign against (-1)^w for every Weyl element
    PfaffianCheck(LambdaArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct TypeArgs {
    /// Lie type, e.g. A2, B2, G2, A1xA2
    #[arg(long = "type")]
    lie_type: String,
    #[arg(long, value_enum, default_value = "json")]
    out: Format,
}

#[derive(Args, Debug)]
struct RootArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Simple-root coordinates, comma-separated
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    x: Coords,
}

#[derive(Args, Debug)]
struct LambdaArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Fundamental-weight coordinates, comma-separated
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    lambda: Coords,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    lambda: Coords,
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    mu: Coords,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Use k = 1..=k_max
    #[arg(long, conflicts_with = "k_list")]
    k_max: Option<u64>,
    /// Explicit increasing dilations, comma-separated
    #[arg(long, value_delimiter = ',')]
    k_list: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[command(flatten)]
    lam: LambdaArgs,
    #[arg(long, default_value_t = 40)]
    grid_resolution: usize,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    lam: LambdaArgs,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Bins per axis over the orbit bounding box
    #[arg(long, default_value_t = 20)]
    bins: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Midpoint refinement per axis for the exact bin masses
    #[arg(long, default_value_t = 4)]
    refine: usize,
}

/// Comma-separated rationals, each `p/q` or an integer.
#[derive(Clone, Debug)]
struct Coords(Vec<Rational>);

fn parse_list(s: &str) -> Result<Coords, String> {
    num::parse_rational_list(s).map(Coords).map_err(|e| e.to_string())
}

struct Output {
    json: Value,
    csv: Option<String>,
}

type CmdResult = std::result::Result<Output, Error>;

fn engine(t: &TypeArgs) -> Result<DhEngine, Error> {
    DhEngine::from_type_str(&t.lie_type)
}

fn roots(a: &TypeArgs) -> CmdResult {
    let rs = RootSystem::from_type_str(&a.lie_type)?;
    let list: Vec<Value> = (0..rs.n())
        .map(|i| {
            json!({
                "root": rs.positive_roots()[i],
                "weight": rs.positive_roots_weight()[i],
                "coroot": rs.positive_coroots()[i],
            })
        })
        .collect();
    let mut csv = String::from("index,root,weight,coroot\n");
    for i in 0..rs.n() {
        let _ = writeln!(
            csv,
            "{i},{},{},{}",
            join(&rs.positive_roots()[i], ";"),
            join(&rs.positive_roots_weight()[i], ";"),
            join(&rs.positive_coroots()[i], ";")
        );
    }
    let result = json!({
        "rank": rs.rank(),
        "positive_root_count": rs.n(),
        "s": rs.s(),
        "cartan": rs.cartan_matrix(),
        "symmetrizer": rs.symmetrizer(),
        "positive_roots": list,
    });
    Ok(Output { json: envelope("roots", &a.lie_type, vec![], result), csv: Some(csv) })
}

fn weyl_cmd(a: &TypeArgs) -> CmdResult {
    let rs = RootSystem::from_type_str(&a.lie_type)?;
    let wg = weyl::WeylGroup::generate(&rs);
    let mut csv = String::from("index,length,sign,inversions,matrix\n");
    let mut elements = Vec::with_capacity(wg.order());
    for (i, w) in wg.elements().iter().enumerate() {
        let inv = weyl::inversion_count(&rs, w);
        let rows: Vec<String> = w.action().iter().map(|r| join(r, " ")).collect();
        let _ = writeln!(csv, "{i},{},{},{inv},{}", w.length(), w.sign(), rows.join(";"));
        elements.push(json!({
            "index": i,
            "length": w.length(),
            "sign": w.sign(),
            "inversions": inv,
            "matrix": w.action(),
        }));
    }
    let result = json!({ "order": wg.order(), "elements": elements });
    Ok(Output { json: envelope("weyl", &a.lie_type, vec![], result), csv: Some(csv) })
}

fn partition(a: &RootArgs) -> CmdResult {
    let rs = RootSystem::from_type_str(&a.ty.lie_type)?;
    let x = RootVector::new(a.x.0.clone());
    let p = kostant::partition_count(&rs, &x)?;
    let csv = format!("x,partition\n{},{p}\n", join(&a.x.0, ";"));
    Ok(Output { json: envelope("partition", &a.ty.lie_type, vec![("x", rationals(&a.x.0))], big(&p)), csv: Some(csv) })
}

fn volume(a: &RootArgs) -> CmdResult {
    let rs = RootSystem::from_type_str(&a.ty.lie_type)?;
    let geometry = polytope::FiberGeometry::new(&rs);
    let x = RootVector::new(a.x.0.clone());
    let v = geometry.volume(&x)?;
    let vertices: Vec<Value> = geometry.vertices(&x)?.iter().map(|p| rationals(p)).collect();
    let fields = vec![
        ("x", rationals(&a.x.0)),
        ("kernel_basis", json!(geometry.kernel_basis())),
        ("vertices", Value::Array(vertices)),
        ("degenerate", json!(geometry.is_degenerate(&x)?)),
    ];
    let csv = format!("x,volume,decimal\n{},{},{}\n", join(&a.x.0, ";"), plain(&v), decimal(&v));
    Ok(Output { json: envelope("volume", &a.ty.lie_type, fields, rational(&v)), csv: Some(csv) })
}

fn density(a: &PointArgs) -> CmdResult {
    let e = engine(&a.ty)?;
    let q = e.query(Weight::new(a.lambda.0.clone()), Weight::new(a.mu.0.clone()))?;
    let rho = e.dh_density(&q)?;
    let hull = format!("{:?}", e.hull_position(q.lambda(), q.mu())?).to_lowercase();
    let on_wall = e.on_wall(&q)?;
    let fields = vec![
        ("lambda", weight(q.lambda())),
        ("mu", weight(q.mu())),
        ("hull", json!(hull)),
        ("on_wall", json!(on_wall)),
    ];
    let csv = format!("density,decimal,hull,on_wall\n{},{},{hull},{on_wall}\n", plain(&rho), decimal(&rho));
    Ok(Output { json: envelope("density", &a.ty.lie_type, fields, rational(&rho)), csv: Some(csv) })
}

fn multiplicity(a: &PointArgs) -> CmdResult {
    let e = engine(&a.ty)?;
    let (lambda, mu) = (Weight::new(a.lambda.0.clone()), Weight::new(a.mu.0.clone()));
    let m = e.weight_multiplicity(&lambda, &mu)?;
    let fields = vec![("lambda", weight(&lambda)), ("mu", weight(&mu))];
    let csv = format!("multiplicity\n{m}\n");
    Ok(Output { json: envelope("multiplicity", &a.ty.lie_type, fields, big(&m)), csv: Some(csv) })
}

fn support(a: &LambdaArgs) -> CmdResult {
    let rs = RootSystem::from_type_str(&a.ty.lie_type)?;
    let lambda = Weight::new(a.lambda.0.clone());
    let weights = dh::weight_support(&rs, &lambda)?;
    let dim = dh::weyl_dimension(&rs, &lambda)?;
    let mut csv = String::from("weight,multiplicity\n");
    let mut list = Vec::with_capacity(weights.len());
    for (mu, m) in &weights {
        let _ = writeln!(csv, "{},{m}", join(mu, ";"));
        list.push(json!({ "weight": mu, "multiplicity": big(m) }));
    }
    let result = json!({ "dimension": big(&dim), "weights": list });
    Ok(Output { json: envelope("support", &a.ty.lie_type, vec![("lambda", weight(&lambda))], result), csv: Some(csv) })
}

fn converge(a: &ConvergeArgs) -> CmdResult {
    let e = engine(&a.point.ty)?;
    let q = e.query(Weight::new(a.point.lambda.0.clone()), Weight::new(a.point.mu.0.clone()))?;
    let ks: Vec<u64> = match (&a.k_list, a.k_max) {
        (Some(list), _) => list.clone(),
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => (1..=32).collect(),
    };
    let t = e.convergence_series(&q, &ks)?;
    let mut csv = String::from("k,multiplicity,scaled,density,abs_error,abs_error_decimal\n");
    let mut rows = Vec::with_capacity(t.rows.len());
    for r in &t.rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            r.k,
            r.multiplicity,
            plain(&r.scaled),
            plain(&r.density),
            plain(&r.abs_error),
            decimal(&r.abs_error)
        );
        rows.push(json!({
            "k": r.k,
            "multiplicity": big(&r.multiplicity),
            "scaled": rational(&r.scaled),
            "abs_error": rational(&r.abs_error),
        }));
    }
    let result = json!({
        "s": t.s,
        "density": t.rows.first().map(|r| rational(&r.density)),
        "rows": rows,
        "fitted_slope": t.fitted_slope,
        "final_relative_error": t.final_relative_error(),
        "errors_nonincreasing": t.errors_nonincreasing(),
        "on_wall": t.on_wall,
    });
    let fields = vec![("lambda", weight(q.lambda())), ("mu", weight(q.mu()))];
    Ok(Output { json: envelope("converge", &a.point.ty.lie_type, fields, result), csv: Some(csv) })
}

fn grid(a: &GridArgs) -> CmdResult {
    let e = engine(&a.lam.ty)?;
    let rank = e.root_system().rank();
    if rank != 2 {
        return Err(Error::Invalid(format!("grid needs a rank-2 type, `{}` has rank {rank}", a.lam.ty.lie_type)));
    }
    let res = a.grid_resolution;
    if res == 0 {
        return Err(Error::Invalid("grid resolution must be positive".into()));
    }
    let lambda = Weight::new(a.lam.lambda.0.clone());
    e.query(lambda.clone(), Weight::zero(rank))?;
    let bbox = e.orbit_bounding_box(&lambda)?;
    let axis = |i: usize, t: usize| -> Rational {
        let (lo, hi) = &bbox[i];
        lo + (hi - lo) * Rational::new((2 * t + 1).into(), (2 * res).into())
    };
    let points: Vec<[Rational; 2]> =
        (0..res * res).map(|idx| [axis(0, idx / res), axis(1, idx % res)]).collect();
    let values: Vec<Rational> = points.par_iter().map(|p| e.density_at(&lambda, p)).collect::<Result<_, _>>()?;
    let mut csv = String::from("mu_0,mu_1,density,density_exact\n");
    let mut rows = Vec::with_capacity(points.len());
    for (p, v) in points.iter().zip(&values) {
        let _ = writeln!(csv, "{},{},{},{}", decimal(&p[0]), decimal(&p[1]), decimal(v), plain(v));
        rows.push(json!({ "mu": rationals(p), "density": rational(v), "decimal": decimal(v) }));
    }
    let bounds: Vec<Value> = bbox.iter().map(|(lo, hi)| json!([rational(lo), rational(hi)])).collect();
    let fields = vec![("lambda", weight(&lambda)), ("resolution", json!(res)), ("bounding_box", json!(bounds))];
    Ok(Output { json: envelope("grid", &a.lam.ty.lie_type, fields, Value::Array(rows)), csv: Some(csv) })
}

fn sample_orbit(a: &SampleArgs) -> CmdResult {
    let e = engine(&a.lam.ty)?;
    let rs = e.root_system();
    let n = match rs.lie_type().to_string().as_str() {
        "A1" => 2,
        "A2" => 3,
        other => return Err(Error::UnsupportedType(format!("{other}: sampling supports A1 (SU(2)) and A2 (SU(3))"))),
    };
    if a.bins == 0 {
        return Err(Error::Invalid("bins must be positive".into()));
    }
    let lambda = Weight::new(a.lam.lambda.0.clone());
    e.query(lambda.clone(), Weight::zero(rs.rank()))?;
    let bbox = e.orbit_bounding_box(&lambda)?;
    let spec = BinSpec::new(
        bbox.iter().map(|b| num::to_f64(&b.0)).collect(),
        bbox.iter().map(|b| num::to_f64(&b.1)).collect(),
        vec![a.bins; rs.rank()],
    )?;
    let cfg = OrbitSampleConfig {
        n,
        lambda: lambda.clone(),
        sample_count: a.samples,
        bins: spec,
        seed: a.seed,
        form_scale: num::q(1),
    };
    let hist = orbit::sample_pushforward(&cfg)?;
    let report = orbit::compare_to_exact(&hist, &e, &lambda, a.refine)?;
    let counts: Vec<u64> = hist.counts.clone();
    let fields = vec![
        ("lambda", weight(&lambda)),
        ("samples", json!(a.samples)),
        ("seed", json!(a.seed)),
        ("bins", json!({ "lo": hist.spec.lo, "hi": hist.spec.hi, "count": hist.spec.bins })),
    ];
    let result = json!({
        "counts": counts,
        "outside": hist.outside,
        "comparison": serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?,
    });
    Ok(Output { json: envelope("sample-orbit", &a.lam.ty.lie_type, fields, result), csv: Some(hist.to_csv()) })
}

fn pfaffian_check(a: &LambdaArgs) -> CmdResult {
    let rs = RootSystem::from_type_str(&a.ty.lie_type)?;
    let wg = weyl::WeylGroup::generate(&rs);
    let lambda = Weight::new(a.lambda.0.clone());
    let mut csv = String::from("index,length,pfaffian,pfaffian_sign,weyl_sign,agree\n");
    let mut rows = Vec::with_capacity(wg.order());
    let mut all = true;
    for (i, w) in wg.elements().iter().enumerate() {
        let p = dh::pfaffian(&rs, w, &lambda)?;
        let sign = dh::pfaffian_sign(&rs, &wg, w, &lambda)?;
        let agree = sign == w.sign();
        all &= agree;
        let _ = writeln!(csv, "{i},{},{},{sign},{},{agree}", w.length(), plain(&p), w.sign());
        rows.push(json!({
            "index": i,
            "length": w.length(),
            "pfaffian": rational(&p),
            "pfaffian_sign": sign,
            "weyl_sign": w.sign(),
            "agree": agree,
        }));
    }
    if !all {
        return Err(Error::Internal(format!("Pfaffian sign disagrees with (-1)^w for lambda = {lambda}")));
    }
    let result = json!({ "all_agree": all, "elements": rows });
    Ok(Output { json: envelope("pfaffian-check", &a.ty.lie_type, vec![("lambda", weight(&lambda))], result), csv: Some(csv) })
}

fn run(cli: &Cli) -> (CmdResult, Format) {
    match &cli.command {
        Command::Roots(a) => (roots(a), a.out),
        Command::Weyl(a) => (weyl_cmd(a), a.out),
        Command::Partition(a) => (partition(a), a.ty.out),
        Command::Volume(a) => (volume(a), a.ty.out),
        Command::Density(a) => (density(a), a.ty.out),
        Command::Multiplicity(a) => (multiplicity(a), a.ty.out),
        Command::Support(a) => (support(a), a.ty.out),
        Command::Converge(a) => (converge(a), a.point.ty.out),
        Command::Grid(a) => (grid(a), a.lam.ty.out),
        Command::SampleOrbit(a) => (sample_orbit(a), a.lam.ty.out),
        Command::PfaffianCheck(a) => (pfaffian_check(a), a.ty.out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (result, format) = run(&cli);
    match result {
        Ok(out) => {
            match (format, out.csv) {
                (Format::Csv, Some(csv)) => print!("{csv}"),
                _ => println!("{}", serde_json::to_string_pretty(&out.json).expect("json serialization")),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
