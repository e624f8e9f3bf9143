//! Command-line front end for the sl2cf library.
//!
//! Exit codes: 0 success (including "member"), 1 well-formed negative
//! result (non-member, no completion, oracle miss), 2 invalid input,
//! 3 unsupported parameters or refused search, 4 internal inconsistency.

use std::io::BufRead;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigInt;
use sl2cf::{
    check_group, check_monoid, complete_matrix, density_scan, eval, format_rational, oracle_check,
    parse_rational, prepend_l, prepend_r, short_cf, transform_f, transform_g, Ambient, EnumSpec,
    Error as LibError, Mat2, Mode, PQSeq, Params, Verdict, DEFAULT_WORD_CAP,
};

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_INVALID: i32 = 2;
const EXIT_UNSUPPORTED: i32 = 3;
const EXIT_INCONSISTENT: i32 = 4;

/// Override for the enumeration cap used by the oracle subcommand.
const ORACLE_CAP_VAR: &str = "SL2CF_ORACLE_CAP";

#[derive(Parser)]
#[command(
    name = "sl2cf",
    version,
    about = "Membership and factorization in matrix monoids and groups generated by L = [1,0;u,1] and R = [1,v;0,1], via short continued fractions",
    after_help = "Quote or use `--` before negative arguments, e.g. `sl2cf cf -- -2457/887`.\n\
                  Sequences are written [q0,q1,...], matrices \"a b c d\" (row-major), rationals p/q.\n\
                  Exit codes: 0 ok/member, 1 non-member or not found, 2 invalid input, 3 unsupported parameters, 4 internal inconsistency."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Short continued fraction of a rational, e.g. `cf -- -2457/887`.
    Cf { rational: String },
    /// Rewrite a short-form sequence into one without interior 1s.
    F { sequence: String },
    /// Inverse rewrite, back towards the short form.
    G { sequence: String },
    /// Exact value of a sequence.
    Eval { sequence: String },
    /// Apply the lower-generator column action to a sequence:
    /// a/b becomes a/(a*u*alpha + b).
    PrependL {
        sequence: String,
        #[arg(short, long)]
        u: String,
        #[arg(short, long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Apply the upper-generator column action to a sequence:
    /// a/b becomes (a + b*v*alpha)/b.
    PrependR {
        sequence: String,
        #[arg(short, long)]
        v: String,
        #[arg(short, long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Decide membership of a matrix; prints the factorization for members.
    Check(CheckArgs),
    /// Print only the generator factorization of a member.
    Factor(CheckArgs),
    /// Complete a second column (b, d) to an ambient matrix.
    Complete {
        #[arg(short, long)]
        u: String,
        #[arg(short, long)]
        v: String,
        #[arg(short, long, allow_hyphen_values = true)]
        b: String,
        #[arg(short, long, allow_hyphen_values = true)]
        d: String,
        /// Target the monoid-flavoured ambient set (nonnegative entries).
        #[arg(long)]
        monoid_ambient: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for a factorization by bounded enumeration.
    Oracle {
        #[arg(short, long)]
        u: String,
        #[arg(short, long)]
        v: String,
        /// Matrix "a b c d", row-major.
        #[arg(short = 'M', long)]
        matrix: String,
        #[arg(long, conflicts_with = "group")]
        monoid: bool,
        #[arg(long)]
        group: bool,
        #[arg(long, default_value_t = 4)]
        max_blocks: u32,
        #[arg(long, default_value_t = 3)]
        max_exp: u64,
        #[arg(long)]
        json: bool,
    },
    /// Count members among ambient matrices with u = v = k over a box of
    /// second columns; prints a JSON report.
    Density {
        #[arg(short, long)]
        k: u64,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").args(["monoid", "group"])))]
struct CheckArgs {
    #[arg(short, long)]
    u: String,
    #[arg(short, long)]
    v: String,
    /// Matrix "a b c d", row-major.
    #[arg(short = 'M', long, required_unless_present = "batch")]
    matrix: Option<String>,
    /// Decide membership in the monoid.
    #[arg(long)]
    monoid: bool,
    /// Decide membership in the group.
    #[arg(long)]
    group: bool,
    /// Read one matrix per line from stdin, print one verdict per line.
    #[arg(long)]
    batch: bool,
    /// Emit {"member":…,"word":…,"diagnostic":…} instead of text.
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    };
    std::process::exit(code);
}

fn exit_code_for(err: &LibError) -> i32 {
    match err {
        LibError::InvalidInput(_)
        | LibError::DegenerateSequence(_)
        | LibError::ClassViolation { .. }
        | LibError::NotUnimodular { .. } => EXIT_INVALID,
        LibError::UnsupportedParams(_) | LibError::SearchCapExceeded { .. } => EXIT_UNSUPPORTED,
        LibError::Inconsistency(_) => EXIT_INCONSISTENT,
    }
}

fn parse_bigint(text: &str, what: &str) -> Result<BigInt, LibError> {
    BigInt::from_str(text.trim())
        .map_err(|_| LibError::InvalidInput(format!("cannot parse {what} {text:?}")))
}

fn parse_params(u: &str, v: &str) -> Result<Params, LibError> {
    Params::new(parse_bigint(u, "u")?, parse_bigint(v, "v")?)
}

fn run(command: Command) -> Result<i32, LibError> {
    match command {
        Command::Cf { rational } => {
            let x = parse_rational(&rational)?;
            println!("{}", short_cf(&x));
            Ok(EXIT_OK)
        }
        Command::F { sequence } => {
            let s: PQSeq = sequence.parse()?;
            println!("{}", transform_f(&s)?);
            Ok(EXIT_OK)
        }
        Command::G { sequence } => {
            let s: PQSeq = sequence.parse()?;
            println!("{}", transform_g(&s)?);
            Ok(EXIT_OK)
        }
        Command::Eval { sequence } => {
            let s: PQSeq = sequence.parse()?;
            println!("{}", format_rational(&eval(&s)?));
            Ok(EXIT_OK)
        }
        Command::PrependL { sequence, u, alpha } => {
            let s: PQSeq = sequence.parse()?;
            let result = prepend_l(&s, &parse_bigint(&u, "u")?, &parse_bigint(&alpha, "alpha")?)?;
            println!("{result}");
            Ok(EXIT_OK)
        }
        Command::PrependR { sequence, v, alpha } => {
            let s: PQSeq = sequence.parse()?;
            let result = prepend_r(&s, &parse_bigint(&v, "v")?, &parse_bigint(&alpha, "alpha")?)?;
            println!("{result}");
            Ok(EXIT_OK)
        }
        Command::Check(args) => run_check(args, Output::Verdict),
        Command::Factor(args) => run_check(args, Output::WordOnly),
        Command::Complete {
            u,
            v,
            b,
            d,
            monoid_ambient,
            json,
        } => {
            let p = parse_params(&u, &v)?;
            let ambient = if monoid_ambient {
                Ambient::ScriptS
            } else {
                Ambient::ScriptG
            };
            let completion =
                complete_matrix(&parse_bigint(&b, "b")?, &parse_bigint(&d, "d")?, &p, ambient)?;
            match completion {
                Some(m) => {
                    if json {
                        println!("{}", serde_json::to_string(&m).expect("matrix serializes"));
                    } else {
                        println!("{m}");
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    if json {
                        println!("null");
                    } else {
                        println!("no completion");
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Oracle {
            u,
            v,
            matrix,
            monoid,
            group,
            max_blocks,
            max_exp,
            json,
        } => {
            let p = parse_params(&u, &v)?;
            let mode = infer_mode(monoid, group, &p)?;
            let m: Mat2 = matrix.parse()?;
            let mut spec = EnumSpec::new(p, max_blocks, max_exp, mode)?;
            if let Ok(cap) = std::env::var(ORACLE_CAP_VAR) {
                let cap = cap.parse::<u64>().map_err(|_| {
                    LibError::InvalidInput(format!("cannot parse {ORACLE_CAP_VAR}={cap:?}"))
                })?;
                spec = spec.with_cap(cap);
            } else {
                spec = spec.with_cap(DEFAULT_WORD_CAP);
            }
            match oracle_check(&m, &spec)? {
                Some(word) => {
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({ "word": word.to_string() })
                        );
                    } else {
                        println!("{word}");
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    if json {
                        println!("{}", serde_json::json!({ "word": null }));
                    } else {
                        println!("none");
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Density { k, bound } => {
            let report = density_scan(k, bound)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            Ok(EXIT_OK)
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Output {
    Verdict,
    WordOnly,
}

fn infer_mode(monoid: bool, group: bool, p: &Params) -> Result<Mode, LibError> {
    match (monoid, group) {
        (true, false) => Ok(Mode::Monoid),
        (false, true) => Ok(Mode::Group),
        (false, false) => {
            // Only u = v = 2 has an unambiguous default: the group case is
            // the classical one there.
            let two = BigInt::from(2);
            if p.u() == &two && p.v() == &two {
                Ok(Mode::Group)
            } else {
                Err(LibError::InvalidInput(
                    "pass --monoid or --group (inferred only for u = v = 2)".into(),
                ))
            }
        }
        (true, true) => unreachable!("clap rejects conflicting mode flags"),
    }
}

fn run_check(args: CheckArgs, output: Output) -> Result<i32, LibError> {
    let p = parse_params(&args.u, &args.v)?;
    let mode = infer_mode(args.monoid, args.group, &p)?;
    if args.batch {
        let stdin = std::io::stdin();
        let mut any_invalid = false;
        for line in stdin.lock().lines() {
            let line = line.map_err(|e| LibError::InvalidInput(format!("stdin: {e}")))?;
            if line.trim().is_empty() {
                continue;
            }
            match line.parse::<Mat2>().and_then(|m| decide(&m, &p, mode)) {
                Ok(verdict) => print_verdict(&verdict, output, args.json),
                Err(err) => {
                    any_invalid = true;
                    if args.json {
                        println!("{}", serde_json::json!({ "error": err.to_string() }));
                    } else {
                        println!("error: {err}");
                    }
                }
            }
        }
        return Ok(if any_invalid { EXIT_INVALID } else { EXIT_OK });
    }
    let matrix_text = args
        .matrix
        .as_deref()
        .expect("clap requires -M without --batch");
    let m: Mat2 = matrix_text.parse()?;
    let verdict = decide(&m, &p, mode)?;
    print_verdict(&verdict, output, args.json);
    Ok(if verdict.is_member() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn decide(m: &Mat2, p: &Params, mode: Mode) -> Result<Verdict, LibError> {
    match mode {
        Mode::Monoid => check_monoid(m, p),
        Mode::Group => check_group(m, p),
    }
}

fn print_verdict(verdict: &Verdict, output: Output, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::json!({
                "member": verdict.is_member(),
                "word": verdict.word().map(|w| w.to_string()),
                "diagnostic": verdict.diagnostic().map(|d| d.to_string()),
            })
        );
        return;
    }
    match verdict {
        Verdict::Member { word } => match output {
            Output::Verdict => println!("member {word}"),
            Output::WordOnly => println!("{word}"),
        },
        Verdict::NonMember { diagnostic } => println!("non-member {diagnostic}"),
    }
}
