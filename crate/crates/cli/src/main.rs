use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use pointreg::bounds::{
    exception_search, lemma_margin, prop31_bound, threshold_check, BoundQuery, BoundVariant,
    MarginLemma, MarginQuery, ThresholdQuery,
};
use pointreg::castelnuovo::{
    separator_auto, separator_greedy, separator_lemma_v1eq2, separator_lemma_v1ge3,
    separator_linear_algebra, separator_plane, verify_certificate,
};
use pointreg::generators::{
    gen_f2linear, gen_monomial_curve_section, gen_random, gen_rnc, rnc_membership, RncParam,
};
use pointreg::hilbert::hilbert_function;
use pointreg::position::classify_position;
use pointreg::{CertCheck, EnumLimits, F2Mode, FieldElement, FieldSpec, PointConfig, SepError};

use pointreg_cli::pcfg::{emit_pcfg, emit_sepcert, parse_pcfg, parse_sepcert};
use pointreg_cli::report::{analyze, render, AnalyzeError};

#[derive(Parser)]
#[command(
    name = "pointreg",
    version,
    about = "Regularity invariants and separator certificates for finite point configurations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated configuration in pcfg format.
    Gen {
        #[command(subcommand)]
        gen: GenCmd,
    },
    /// Hilbert function values, h-vector, and the regularity index.
    Hilbert {
        file: PathBuf,
        /// Stop tabulating at this degree (default: stabilization).
        #[arg(long)]
        tmax: Option<usize>,
    },
    /// Regularity index against the generic degree bound.
    Regularity { file: PathBuf },
    /// Position classification: incidence profile and dichotomy case.
    Position { file: PathBuf },
    /// Construct a separator certificate for one point.
    Separate {
        file: PathBuf,
        /// Index of the point to separate.
        #[arg(long)]
        point: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Target degree (linalg method only; default: the regularity index).
        #[arg(long)]
        degree: Option<usize>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a separator certificate against a configuration.
    Verify {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Margin formulas, exception scans, and threshold checks.
    Bound {
        #[command(subcommand)]
        bound: BoundCmd,
    },
    /// Decide whether the points lie on a rational normal curve.
    Rncfit { file: PathBuf },
    /// Full report: classification, index, certificates, curve membership.
    Analyze { file: PathBuf },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Points of the rational normal curve at given parameters.
    Rnc {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Modulus coefficients, ascending, comma separated (e > 1 only).
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        n: usize,
        /// Comma separated parameters; `inf` for the point at infinity.
        #[arg(long)]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Image of GF(2)^k under a random GF(2)-linear map.
    F2linear {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Affine)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hyperplane section of a monomial curve.
    Section {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        modulus: Option<String>,
        /// Strictly increasing positive exponents, comma separated.
        #[arg(long)]
        exponents: String,
        /// Hyperplane coefficients c0..cM, comma separated encodings.
        #[arg(long)]
        hyperplane: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniformly random spanning configuration.
    Random {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Evaluate one margin formula.
    Margin {
        /// One of l21, l22n3, l22n4, l22n5plus, l24, l25.
        #[arg(long)]
        lemma: String,
        /// Comma separated parameters in the formula's order.
        #[arg(long)]
        params: String,
    },
    /// Scan the chain construction window for margin failures.
    Search {
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        dmax: i64,
        /// Keep only tuples passing the pencil-closure relation.
        #[arg(long)]
        feasibility: bool,
    },
    /// Regularity bound for k-Buchsbaum curves.
    Prop31 {
        #[arg(long)]
        deg: i64,
        #[arg(long)]
        codim: i64,
        #[arg(long)]
        dim: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        variant: String,
    },
    /// Degree threshold under which a named statement applies.
    Threshold {
        /// One of theorem23, theorem32char0, theorem32charp, lemma21,
        /// lemma22, lemma25.
        #[arg(long)]
        context: String,
        #[arg(long)]
        params: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Linalg,
    Greedy,
    Lemma21,
    Lemma22,
    Plane,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Affine,
    Projective,
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Display) -> Failure {
    Failure {
        code,
        msg: msg.to_string(),
    }
}

fn input_err(msg: impl Display) -> Failure {
    fail(2, msg)
}

fn sep_fail(e: SepError) -> Failure {
    match e {
        SepError::BadIndex | SepError::PreconditionFailed(_) => fail(2, e),
        SepError::ConstructionStuck(_) | SepError::Internal(_) => fail(3, e),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn load_config(path: &Path) -> Result<PointConfig, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| input_err(format!("{}: {}", path.display(), e)))?;
    parse_pcfg(&text).map_err(|e| input_err(format!("{}: {}", path.display(), e)))
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| input_err(format!("bad {} entry '{}'", what, tok.trim())))
        })
        .collect()
}

fn make_field(p: u64, e: u32, modulus: &Option<String>) -> Result<FieldSpec, Failure> {
    let spec = match modulus {
        Some(text) => {
            let coeffs: Vec<u64> = parse_list(text, "modulus")?;
            FieldSpec::with_modulus(p, e, &coeffs)
        }
        None => FieldSpec::new(p, e),
    };
    spec.map_err(input_err)
}

fn coded(field: &FieldSpec, value: u64, what: &str) -> Result<FieldElement, Failure> {
    if value >= field.order() {
        return Err(input_err(format!(
            "{} encoding {} exceeds the field order {}",
            what,
            value,
            field.order()
        )));
    }
    Ok(field.elem(value))
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| input_err(format!("{}: {}", path.display(), e)))
        }
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.cmd {
        Cmd::Gen { gen } => run_gen(gen),
        Cmd::Hilbert { file, tmax } => {
            let c = load_config(&file)?;
            let s = hilbert_function(&c, tmax);
            let mut out = config_banner(&c);
            for (t, value) in s.values.iter().enumerate() {
                out.push_str(&format!("h {} {}\n", t, value));
            }
            out.push_str(&format!("hvector {}\n", join(&s.h_vector)));
            out.push_str(&format!("index {}\n", s.i_of_s));
            out.push_str(&format!("regularity {}\n", s.reg));
            print!("{}", out);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Regularity { file } => {
            let c = load_config(&file)?;
            let s = hilbert_function(&c, None);
            let bound = (c.len() - 1).div_ceil(c.ambient_dim());
            let mut out = config_banner(&c);
            out.push_str(&format!("index {}\n", s.i_of_s));
            out.push_str(&format!("regularity {}\n", s.reg));
            out.push_str(&format!("bound {}\n", bound));
            out.push_str(&format!("equality {}\n", s.i_of_s == bound));
            print!("{}", out);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Position { file } => {
            let c = load_config(&file)?;
            let class = classify_position(&c, None, &EnumLimits::default())
                .map_err(|e| input_err(format!("classification failed: {}", e)))?;
            let mut out = config_banner(&c);
            out.push_str(&format!("semi_uniform {}\n", class.semi_uniform));
            out.push_str(&format!("linear_general {}\n", class.linear_general));
            match class.uniform {
                Some(flag) => out.push_str(&format!("uniform {}\n", flag)),
                None => out.push_str("uniform unknown\n"),
            }
            match &class.dichotomy {
                Some(case) => out.push_str(&format!("dichotomy {}\n", case)),
                None => out.push_str("dichotomy none\n"),
            }
            if let Some(v) = &class.profile.v {
                out.push_str(&format!("incidences {}\n", join(v)));
            }
            if let Some((a, b)) = &class.profile.witness {
                out.push_str(&format!(
                    "witness {} {} {}\n",
                    a.dim, a.incident_count, b.incident_count
                ));
            }
            print!("{}", out);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Separate {
            file,
            point,
            method,
            degree,
            out,
        } => {
            let c = load_config(&file)?;
            if degree.is_some() && !matches!(method, MethodArg::Linalg) {
                return Err(input_err("--degree applies to the linalg method only"));
            }
            let cert = match method {
                MethodArg::Auto => separator_auto(&c, point).map_err(sep_fail)?,
                MethodArg::Greedy => separator_greedy(&c, point).map_err(sep_fail)?,
                MethodArg::Lemma21 => separator_lemma_v1ge3(&c, point).map_err(sep_fail)?,
                MethodArg::Lemma22 => separator_lemma_v1eq2(&c, point).map_err(sep_fail)?,
                MethodArg::Plane => separator_plane(&c, point).map_err(sep_fail)?,
                MethodArg::Linalg => {
                    if point >= c.len() {
                        return Err(input_err("point index out of range"));
                    }
                    let t = degree.unwrap_or_else(|| hilbert_function(&c, None).i_of_s);
                    match separator_linear_algebra(&c, point, t) {
                        Some(cert) => cert,
                        None => {
                            eprintln!("no separator of degree {} exists at point {}", t, point);
                            return Ok(ExitCode::FAILURE);
                        }
                    }
                }
            };
            write_out(&out, &emit_sepcert(&cert))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { file, cert } => {
            let c = load_config(&file)?;
            let text = fs::read_to_string(&cert)
                .map_err(|e| input_err(format!("{}: {}", cert.display(), e)))?;
            let parsed = parse_sepcert(c.field(), &text)
                .map_err(|e| input_err(format!("{}: {}", cert.display(), e)))?;
            let check = verify_certificate(&c, &parsed);
            println!("check {}", check);
            Ok(if check == CertCheck::Valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Bound { bound } => run_bound(bound),
        Cmd::Rncfit { file } => {
            let c = load_config(&file)?;
            if c.len() < c.ambient_dim() + 3 {
                return Err(input_err(format!(
                    "need at least N + 3 = {} points to fit a curve",
                    c.ambient_dim() + 3
                )));
            }
            // No frame in general position already rules the curve out.
            let (member, witness) = rnc_membership(&c).unwrap_or((false, None));
            let mut out = format!("member {}\n", member);
            if let Some(params) = witness {
                let joined: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                out.push_str(&format!("params {}\n", joined.join(" ")));
            }
            print!("{}", out);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Analyze { file } => {
            let c = load_config(&file)?;
            let report = analyze(&c).map_err(|e| match e {
                AnalyzeError::Position(err) => input_err(format!("analysis failed: {}", err)),
                AnalyzeError::Separator(err) => sep_fail(err),
            })?;
            print!("{}", render(&report));
            Ok(if report.discrepancy {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn config_banner(c: &PointConfig) -> String {
    let field = c.field();
    let mut out = String::new();
    out.push_str(&format!("degree {}\n", c.len()));
    out.push_str(&format!("ambient {}\n", c.ambient_dim()));
    out.push_str(&format!("field {} {}\n", field.p(), field.e()));
    out
}

fn join<T: Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    parts.join(" ")
}

fn run_gen(gen: GenCmd) -> Result<ExitCode, Failure> {
    match gen {
        GenCmd::Rnc {
            p,
            e,
            modulus,
            n,
            params,
            out,
        } => {
            let field = make_field(p, e, &modulus)?;
            let parsed: Vec<RncParam> = params
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    if tok == "inf" {
                        Ok(RncParam::Infinity)
                    } else {
                        let value = tok
                            .parse::<u64>()
                            .map_err(|_| input_err(format!("bad parameter '{}'", tok)))?;
                        Ok(RncParam::Finite(coded(&field, value, "parameter")?))
                    }
                })
                .collect::<Result<_, Failure>>()?;
            let c = gen_rnc(&field, n, &parsed).map_err(input_err)?;
            write_out(&out, &emit_pcfg(&c))?;
            Ok(ExitCode::SUCCESS)
        }
        GenCmd::F2linear {
            e,
            n,
            k,
            seed,
            mode,
            out,
        } => {
            let mode = match mode {
                ModeArg::Affine => F2Mode::Affine,
                ModeArg::Projective => F2Mode::Projective,
            };
            let c = gen_f2linear(e, n, k, seed, mode).map_err(input_err)?;
            write_out(&out, &emit_pcfg(&c))?;
            Ok(ExitCode::SUCCESS)
        }
        GenCmd::Section {
            p,
            e,
            modulus,
            exponents,
            hyperplane,
            out,
        } => {
            let field = make_field(p, e, &modulus)?;
            let exps: Vec<u64> = parse_list(&exponents, "exponent")?;
            let raw: Vec<u64> = parse_list(&hyperplane, "hyperplane coefficient")?;
            let coeffs: Vec<FieldElement> = raw
                .into_iter()
                .map(|v| coded(&field, v, "hyperplane coefficient"))
                .collect::<Result<_, _>>()?;
            let section = gen_monomial_curve_section(&field, &exps, &coeffs).map_err(input_err)?;
            let mut text = format!(
                "# section roots {} infinity {} polydegree {}\n",
                section.roots.len(),
                section.has_infinity,
                section.poly_degree
            );
            text.push_str(&emit_pcfg(&section.config));
            write_out(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        GenCmd::Random {
            p,
            e,
            modulus,
            n,
            d,
            seed,
            out,
        } => {
            let field = make_field(p, e, &modulus)?;
            let c = gen_random(&field, n, d, seed).map_err(input_err)?;
            write_out(&out, &emit_pcfg(&c))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn margin_query(lemma: MarginLemma, params: &[i64]) -> Result<MarginQuery, Failure> {
    let arity_err = |want: usize| {
        input_err(format!(
            "{} takes {} parameters, got {}",
            lemma.name(),
            want,
            params.len()
        ))
    };
    Ok(match lemma {
        MarginLemma::L21 => {
            if params.len() != 4 {
                return Err(arity_err(4));
            }
            MarginQuery::L21 {
                d: params[0],
                v: params[1],
                w: params[2],
                n: params[3],
            }
        }
        MarginLemma::L22N3 => {
            if params.len() != 1 {
                return Err(arity_err(1));
            }
            MarginQuery::L22N3 { k: params[0] }
        }
        MarginLemma::L22N4 => {
            if params.len() != 1 {
                return Err(arity_err(1));
            }
            MarginQuery::L22N4 { k: params[0] }
        }
        MarginLemma::L22N5Plus => {
            if params.len() != 2 {
                return Err(arity_err(2));
            }
            MarginQuery::L22N5Plus {
                n: params[0],
                k: params[1],
            }
        }
        MarginLemma::L24 => {
            if params.len() != 2 {
                return Err(arity_err(2));
            }
            MarginQuery::L24 {
                d: params[0],
                v: params[1],
            }
        }
        MarginLemma::L25 => {
            if params.len() != 1 {
                return Err(arity_err(1));
            }
            MarginQuery::L25 { d: params[0] }
        }
    })
}

fn threshold_query(context: &str, params: &[i64]) -> Result<ThresholdQuery, Failure> {
    let two = |name: &str| -> Result<(i64, i64), Failure> {
        if params.len() != 2 {
            return Err(input_err(format!("{} takes 2 parameters", name)));
        }
        Ok((params[0], params[1]))
    };
    match context {
        "theorem23" => {
            let (n, d) = two("theorem23")?;
            Ok(ThresholdQuery::Theorem23 { n, d })
        }
        "theorem32char0" => {
            let (codim, deg) = two("theorem32char0")?;
            Ok(ThresholdQuery::Theorem32Char0 { codim, deg })
        }
        "theorem32charp" => {
            let (codim, deg) = two("theorem32charp")?;
            Ok(ThresholdQuery::Theorem32CharP { codim, deg })
        }
        "lemma21" => {
            let (n, d) = two("lemma21")?;
            Ok(ThresholdQuery::Lemma21 { n, d })
        }
        "lemma22" => {
            let (n, d) = two("lemma22")?;
            Ok(ThresholdQuery::Lemma22 { n, d })
        }
        "lemma25" => {
            if params.len() != 1 {
                return Err(input_err("lemma25 takes 1 parameter"));
            }
            Ok(ThresholdQuery::Lemma25 { d: params[0] })
        }
        other => Err(input_err(format!("unknown context '{}'", other))),
    }
}

fn run_bound(bound: BoundCmd) -> Result<ExitCode, Failure> {
    match bound {
        BoundCmd::Margin { lemma, params } => {
            let lemma = MarginLemma::from_str(&lemma).map_err(input_err)?;
            let params: Vec<i64> = parse_list(&params, "parameter")?;
            let query = margin_query(lemma, &params)?;
            let margin = lemma_margin(&query).map_err(input_err)?;
            println!("lemma {}", lemma.name());
            println!("margin {}", margin);
            println!("holds {}", margin >= 0);
            Ok(ExitCode::SUCCESS)
        }
        BoundCmd::Search {
            lemma,
            n,
            dmax,
            feasibility,
        } => {
            let lemma = MarginLemma::from_str(&lemma).map_err(input_err)?;
            let found = exception_search(lemma, n, dmax, feasibility).map_err(input_err)?;
            let mut out = format!("lemma {}\n", lemma.name());
            out.push_str(&format!("n {}\n", n));
            out.push_str(&format!("dmax {}\n", dmax));
            out.push_str(&format!("count {}\n", found.len()));
            for t in &found {
                out.push_str(&format!(
                    "exception {} {} {} margin {} feasible {}\n",
                    t.d, t.v, t.w, t.margin, t.feasible
                ));
            }
            print!("{}", out);
            Ok(ExitCode::SUCCESS)
        }
        BoundCmd::Prop31 {
            deg,
            codim,
            dim,
            k,
            variant,
        } => {
            let variant = BoundVariant::from_str(&variant).map_err(input_err)?;
            let query = BoundQuery {
                deg,
                codim,
                dim,
                k,
                variant,
            };
            let value = prop31_bound(&query).map_err(input_err)?;
            println!("bound {}", value);
            Ok(ExitCode::SUCCESS)
        }
        BoundCmd::Threshold { context, params } => {
            let params: Vec<i64> = parse_list(&params, "parameter")?;
            let query = threshold_query(&context, &params)?;
            let holds = threshold_check(&query).map_err(input_err)?;
            println!("context {}", context);
            println!("holds {}", holds);
            Ok(ExitCode::SUCCESS)
        }
    }
}
