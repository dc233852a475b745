mod state;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use phasespace::expr::{parse_operator, parse_symbol, parse_univariate};
use phasespace::fock::{dispersion, trace_expectation, wigner_grid};
use phasespace::moyal::moyal_bracket;
use phasespace::serial::PolyRepr;
use phasespace::vn::hv_dispersion_with;
use phasespace::{
    assumption_i_gap, dequantize, star, weyl_quantize, BigRational, Complex64, Error, GridSpec, OpPoly,
    PhasePoint, PhasePoly,
};
use serde_json::{json, Value};
use state::StateSpec;

#[derive(Parser, Debug)]
#[command(name = "phasespace", version, about = "Exact phase-space quantum mechanics with a Fock-space check")]
struct Cli {
    /// Value of ħ, an integer or a ratio such as 1/2.
    #[arg(long, global = true, default_value = "1", value_parser = parse_rational)]
    hbar: BigRational,
    /// Fock-space truncation dimension.
    #[arg(long, global = true, default_value_t = 64)]
    dim: usize,
    /// Wigner grid as qmin:qmax:nq,pmin:pmax:np.
    #[arg(long, global = true, default_value = "-8:8:257,-8:8:257", allow_hyphen_values = true)]
    grid: GridSpec,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weyl symbol of an operator.
    Dequantize {
        #[arg(allow_hyphen_values = true)]
        op: String,
    },
    /// Weyl quantization of a symbol.
    Quantize {
        #[arg(allow_hyphen_values = true)]
        symbol: String,
    },
    /// Star product f ⋆ g.
    Star {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Moyal bracket f ⋆ g − g ⋆ f.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Normal-ordered form of an operator expression.
    NormalForm {
        #[arg(allow_hyphen_values = true)]
        op: String,
    },
    /// Symbol of f(A) against f applied to the symbol of A.
    Gap {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        at: Option<PhasePoint>,
    },
    /// Trace expectation tr(U A).
    Expect {
        #[arg(long)]
        state: StateSpec,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Dispersion tr(U A²) − tr(U A)².
    Dispersion {
        #[arg(long)]
        state: StateSpec,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Sample the Wigner function on the grid and write it as CSV.
    Wigner {
        #[arg(long)]
        state: StateSpec,
        #[arg(long)]
        out: PathBuf,
    },
    /// Readings of f(A) at a phase-space point.
    Hv {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        point: PhasePoint,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true, default_value = "x^2")]
        f: String,
    },
    /// The oscillator-square computation end to end.
    VnDemo,
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim().parse().map_err(|_| format!("expected an integer or n/d, got {s:?}"))
}

fn parse_point(s: &str) -> Result<PhasePoint, String> {
    let bad = || format!("expected q0,p0, got {s:?}");
    let (q, p) = s.split_once(',').ok_or_else(bad)?;
    let pt = PhasePoint::new(q.trim().parse().map_err(|_| bad())?, p.trim().parse().map_err(|_| bad())?);
    if !pt.is_finite() {
        return Err(bad());
    }
    Ok(pt)
}

/// Text form of a computed real: rounded to 12 significant digits, with
/// magnitudes below 1e-12 shown as 0. JSON output carries the raw value.
fn fmt_real(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_real(z.re)
    } else {
        format!("{} {} {}*i", fmt_real(z.re), if z.im < 0.0 { "-" } else { "+" }, fmt_real(z.im.abs()))
    }
}

fn fmt_point(pt: PhasePoint) -> String {
    format!("({}, {})", pt.q0, pt.p0)
}

fn poly_json(f: &PhasePoly) -> Value {
    serde_json::to_value(PolyRepr::from(f.clone())).expect("serializable")
}

fn op_json(a: &OpPoly) -> Value {
    serde_json::to_value(PolyRepr::from(a.clone())).expect("serializable")
}

/// What a subcommand produced: text lines, a JSON result and diagnostics.
struct Output {
    text: Vec<String>,
    result: Value,
    diagnostics: Vec<String>,
}

impl Output {
    fn new(text: impl Into<String>, result: Value) -> Self {
        Output { text: vec![text.into()], result, diagnostics: Vec::new() }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Dequantize { .. } => "dequantize",
        Command::Quantize { .. } => "quantize",
        Command::Star { .. } => "star",
        Command::Bracket { .. } => "bracket",
        Command::NormalForm { .. } => "normal-form",
        Command::Gap { .. } => "gap",
        Command::Expect { .. } => "expect",
        Command::Dispersion { .. } => "dispersion",
        Command::Wigner { .. } => "wigner",
        Command::Hv { .. } => "hv",
        Command::VnDemo => "vn-demo",
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let hbar = &cli.hbar;
    Ok(match &cli.command {
        Command::Dequantize { op } => {
            let f = dequantize(&parse_operator(op)?);
            Output::new(f.to_string(), poly_json(&f))
        }
        Command::Quantize { symbol } => {
            let a = weyl_quantize(&parse_symbol(symbol)?);
            Output::new(a.to_string(), op_json(&a))
        }
        Command::Star { f, g } => {
            let h = star(&parse_symbol(f)?, &parse_symbol(g)?);
            Output::new(h.to_string(), poly_json(&h))
        }
        Command::Bracket { f, g } => {
            let h = moyal_bracket(&parse_symbol(f)?, &parse_symbol(g)?);
            Output::new(h.to_string(), poly_json(&h))
        }
        Command::NormalForm { op } => {
            let a = parse_operator(op)?;
            Output::new(a.to_string(), op_json(&a))
        }
        Command::Gap { op, f, at } => {
            let report = assumption_i_gap(&parse_operator(op)?, &parse_univariate(f)?, *at, hbar);
            let mut text = vec![
                format!("quantity: {}", report.quantity),
                format!("function: {}", report.function),
                format!("symbol of f(A): {}", report.symbol_of_fa),
                format!("f(symbol of A): {}", report.f_of_symbol),
                format!("gap: {}", report.gap),
            ];
            if let (Some(pt), Some(z)) = (at, report.gap_at_point) {
                text.push(format!("gap at {}: {}", fmt_point(*pt), fmt_complex(z)));
            }
            text.push(format!("assumption I holds: {}", report.is_zero()));
            Output { text, result: serde_json::to_value(&report).expect("serializable"), diagnostics: Vec::new() }
        }
        Command::Expect { state, op } => {
            let u = state.build(cli.dim)?;
            let value = trace_expectation(&u, &parse_operator(op)?, hbar)?;
            let mut out = Output::new(fmt_real(value), json!(value));
            out.diagnostics.push(format!("dim={}", cli.dim));
            out
        }
        Command::Dispersion { state, op } => {
            let u = state.build(cli.dim)?;
            let value = dispersion(&u, &parse_operator(op)?, hbar)?;
            let mut out = Output::new(fmt_real(value), json!(value));
            out.diagnostics.push(format!("dim={}", cli.dim));
            out
        }
        Command::Wigner { state, out } => {
            let u = state.build(cli.dim)?;
            let grid = wigner_grid(&u, &cli.grid, hbar)?;
            grid.save_csv(out)?;
            let integral = grid.integral();
            let samples = grid.values.len();
            Output {
                text: vec![
                    format!("wrote {samples} samples to {}", out.display()),
                    format!("integral: {}", fmt_real(integral)),
                ],
                result: json!({ "path": out.display().to_string(), "samples": samples, "integral": integral }),
                diagnostics: vec![format!("grid={}", cli.grid)],
            }
        }
        Command::Hv { point, op, f } => {
            let r = hv_dispersion_with(*point, &parse_operator(op)?, &parse_univariate(f)?, hbar)?;
            let mut text = vec![
                format!("point: {}", fmt_point(r.point)),
                format!("quantity: {}", r.quantity),
                format!("function: {}", r.function),
                format!("measure-then-apply reading: {}", fmt_real(r.aprime_reading)),
                format!("operator-function reading: {}", fmt_real(r.assumption_i_reading)),
                format!("gap polynomial: {}", r.gap_polynomial),
            ];
            if r.negative_reading {
                text.push("note: negative reading, which no true dispersion can be".into());
            }
            Output { text, result: serde_json::to_value(&r).expect("serializable"), diagnostics: Vec::new() }
        }
        Command::VnDemo => vn_demo(hbar),
    })
}

fn vn_demo(hbar: &BigRational) -> Output {
    let h = parse_operator("(Q^2+P^2)/2").expect("fixed expression");
    let h2 = &h * &h;
    let h_sym = dequantize(&h);
    let h2_sym = dequantize(&h2);
    let gap = &h2_sym - &(&h_sym * &h_sym);
    // the gap is a constant; read it off at the origin
    let constant = gap.eval_exact(PhasePoint::new(0.0, 0.0), hbar);
    let holds = gap.is_zero();
    let correction = if constant.is_zero() {
        "tilde(H^2) = H^2".to_string()
    } else if constant.re < BigRational::from_integer(0.into()) {
        format!("tilde(H^2) = H^2 - {}", -&constant)
    } else {
        format!("tilde(H^2) = H^2 + {constant}")
    };
    let verdict = if holds {
        "assumption I holds for f(x) = x^2".to_string()
    } else {
        "assumption I fails: the symbol of H^2 is not the square of the symbol of H".to_string()
    };
    let text = vec![
        format!("H = {h}"),
        format!("H^2 = {h2}"),
        format!("tilde(H) = {h_sym}"),
        format!("tilde(H^2) = {h2_sym}"),
        format!("tilde(H^2) - tilde(H)^2 = {gap}"),
        format!("at hbar = {hbar}:"),
        correction.clone(),
        verdict.clone(),
    ];
    let result = json!({
        "operator": op_json(&h),
        "operator_squared": op_json(&h2),
        "symbol": poly_json(&h_sym),
        "symbol_of_square": poly_json(&h2_sym),
        "gap": poly_json(&gap),
        "gap_value": constant.to_string(),
        "summary": correction,
        "assumption_i_holds": holds,
        "verdict": verdict,
    });
    Output { text, result, diagnostics: Vec::new() }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_numerical() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let doc = json!({
                    "command": command_name(&cli.command),
                    "hbar": cli.hbar.to_string(),
                    "result": out.result,
                    "diagnostics": out.diagnostics,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                for line in out.text {
                    println!("{line}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
