//! Command-line front end for the incidence-coalgebra toolkit.
//!
//! Exit codes: 0 on success, 1 when a verification reports a failure,
//! 2 on malformed input, invariant violations, or bound violations.

mod commands;
mod input;
mod output;

use std::process::ExitCode;

use commands::{Options, Outcome};
use output::Format;

const USAGE: &str = "\
decomp-mobius — incidence coalgebras of layered structures, exactly

USAGE:
    decomp-mobius <verb> [target] [input] [flags]

VERBS:
    mu         Möbius function of one object, or the corpus table
    coproduct  coproduct terms of one object, or of the whole corpus
    phi        counts of layerings with all layers nonempty, per degree
    enumerate  isomorphism classes up to --max-size
    verify     run a checker suite; exits 1 if any entry fails

VERIFY TARGETS:
    coalgebra decomposition-space segal complete culf
    abacus bisimplicial bicomodule mobius-bicomodule rota

FLAGS:
    --instance <posets|sets|forests|ptrees>
    --max-size <n>       structure size bound (guarded per instance)
    --max-degree <n>     simplicial degree bound (guard: 3)
    --format <json|csv|pretty>
    --mutate <name>      negative control; flips the verdict
    --signature <path|inline-json>   signature for ptrees

INPUT:
    a positional argument; inline JSON if it starts with '{' or '[',
    otherwise a file path. Formats: poset {\"n\":2,\"covers\":[[0,1]]},
    forest {\"parent\":[null,0]}, set {\"n\":3},
    tree {\"op\":\"m\",\"children\":[{\"edge\":0},{\"edge\":0}]} or an array
    of trees.

ENVIRONMENT:
    DECOMP_MOBIUS_THREADS   worker cap for corpus loops (output is
                            byte-identical for any value)
";

fn parse_args(args: &[String]) -> Result<(String, Vec<String>, Options), String> {
    let mut verb = None;
    let mut positionals = Vec::new();
    let mut opts = Options {
        instance: None,
        max_size: None,
        max_degree: None,
        format: Format::Json,
        mutate: None,
        signature: None,
        input: None,
    };
    let mut it = args.iter().peekable();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--instance" | "--max-size" | "--max-degree" | "--format" | "--mutate"
            | "--signature" => {
                let value = it
                    .next()
                    .ok_or_else(|| format!("{arg} needs a value"))?
                    .clone();
                match arg.as_str() {
                    "--instance" => opts.instance = Some(value),
                    "--max-size" => {
                        opts.max_size =
                            Some(value.parse().map_err(|_| "--max-size must be an integer")?)
                    }
                    "--max-degree" => {
                        opts.max_degree =
                            Some(value.parse().map_err(|_| "--max-degree must be an integer")?)
                    }
                    "--format" => {
                        opts.format = Format::parse(&value)
                            .ok_or_else(|| format!("unknown format \"{value}\""))?
                    }
                    "--mutate" => opts.mutate = Some(value),
                    "--signature" => opts.signature = Some(value),
                    _ => unreachable!(),
                }
            }
            "-h" | "--help" => return Err(String::new()),
            flag if flag.starts_with("--") => return Err(format!("unknown flag {flag}")),
            _ => {
                if verb.is_none() {
                    verb = Some(arg.clone());
                } else {
                    positionals.push(arg.clone());
                }
            }
        }
    }
    match verb {
        Some(v) => Ok((v, positionals, opts)),
        None => Err("missing verb".into()),
    }
}

fn run() -> Result<Outcome, (u8, String)> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (verb, positionals, mut opts) = parse_args(&args).map_err(|msg| {
        if msg.is_empty() {
            (0, USAGE.to_string())
        } else {
            (2, format!("error: {msg}\n\n{USAGE}"))
        }
    })?;
    let result = match verb.as_str() {
        "mu" | "coproduct" | "phi" | "enumerate" => {
            opts.input = positionals.first().cloned();
            match verb.as_str() {
                "mu" => commands::run_mu(&opts),
                "coproduct" => commands::run_coproduct(&opts),
                "phi" => commands::run_phi(&opts),
                "enumerate" => commands::run_enumerate(&opts),
                _ => unreachable!(),
            }
        }
        "verify" => {
            let target = positionals
                .first()
                .ok_or((2u8, "error: verify needs a target\n".to_string()))?;
            opts.input = positionals.get(1).cloned();
            commands::run_verify(target, &opts)
        }
        other => {
            return Err((2, format!("error: unknown verb \"{other}\"\n\n{USAGE}")));
        }
    };
    result.map_err(|e| (2, format!("error: {e}\n")))
}

fn main() -> ExitCode {
    match run() {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if !outcome.text.ends_with('\n') {
                println!();
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err((code, msg)) => {
            if code == 0 {
                print!("{msg}");
                ExitCode::SUCCESS
            } else {
                eprint!("{msg}");
                ExitCode::from(code)
            }
        }
    }
}
