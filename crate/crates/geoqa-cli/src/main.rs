//! geoqa: Turkish geographic question answering over the GEO-TR
//! knowledge base.
//!
//! Exit codes: 0 success, 1 assertion failure, 2 input or pipeline
//! error.

mod config;

use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geoqa::eval::{compare_methods, parse_suite, run_method1, run_method2};
use geoqa::formulation::{
    mlp::{train_qt2, FeatureSpace, LabeledFrame, TrainConfig},
    Answer,
};
use geoqa::kb::Triple;
use geoqa::nlp::write_conll;
use geoqa::sparql::SolutionSet;

use config::{load_config, load_pipeline, resolve_config_path, Config};

#[derive(Parser)]
#[command(name = "geoqa", version, about = "Turkish geographic question answering")]
struct Cli {
    /// Configuration file (default: geoqa.conf, or $GEOQA_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Override the configured random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Answer a single question.
    Ask(AskArgs),
    /// Interactive question loop.
    Repl,
    /// Run a question suite through both methods and compare.
    Eval(EvalArgs),
    /// Train the QT2 frame classifier.
    TrainQt2(TrainArgs),
    /// Validate the knowledge base and print closure statistics.
    LoadCheck,
}

#[derive(Args)]
struct AskArgs {
    question: String,
    /// Print the generated SPARQL only; skip evaluation.
    #[arg(long)]
    sparql_only: bool,
    /// Print the full pre-processing trace.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct EvalArgs {
    suite: PathBuf,
    /// Restrict to one method (1 or 2).
    #[arg(long)]
    method: Option<u8>,
    /// Exit 1 unless Method 1's macro-F strictly exceeds Method 2's.
    #[arg(long)]
    assert_m1_beats_m2: bool,
}

#[derive(Args)]
struct TrainArgs {
    labeled: PathBuf,
    /// Train/test split as `train/test` fractions.
    #[arg(long, default_value = "0.8/0.2")]
    split: String,
    /// Where to write the model weights (JSON).
    #[arg(long, default_value = "qt2_model.json")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config_path = resolve_config_path(cli.config.as_deref());
    let config = match load_config(&config_path) {
        Ok(mut c) => {
            if let Some(seed) = cli.seed {
                c.seed = seed;
            }
            c
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Ask(args) => cmd_ask(&config, args, cli.json),
        Command::Repl => cmd_repl(&config),
        Command::Eval(args) => cmd_eval(&config, args, cli.json),
        Command::TrainQt2(args) => cmd_train(&config, args, cli.json),
        Command::LoadCheck => cmd_load_check(&config, cli.json),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn solutions_json(solutions: &SolutionSet) -> serde_json::Value {
    serde_json::json!({
        "variables": solutions.vars.iter().map(|v| v.0.clone()).collect::<Vec<_>>(),
        "rows": solutions
            .rows
            .iter()
            .map(|b| {
                b.iter()
                    .map(|(v, t)| (v.0.clone(), serde_json::Value::String(t.canonical())))
                    .collect::<serde_json::Map<String, serde_json::Value>>()
            })
            .collect::<Vec<_>>(),
        "answers": solutions.answer_set().into_iter().collect::<Vec<_>>(),
    })
}

fn print_trace(answer_sentence: &geoqa::nlp::AnnotatedSentence) {
    println!("tokens:");
    for t in &answer_sentence.tokens {
        println!("  {}\t{}", t.index, t.surface);
    }
    println!("morphology:");
    for (t, a) in answer_sentence.tokens.iter().zip(&answer_sentence.analyses) {
        println!("  {}\t{}+{}+{}", t.surface, a.lemma, a.pos, a.feats_string());
    }
    println!("ner:");
    for (t, l) in answer_sentence.tokens.iter().zip(&answer_sentence.ner_labels) {
        println!("  {}\t{}", t.surface, l);
    }
    println!("dependencies:");
    print!("{}", write_conll(std::slice::from_ref(&answer_sentence.dep_rows)));
}

fn print_solutions(solutions: &SolutionSet) {
    if solutions.rows.is_empty() {
        println!("(no answers)");
        return;
    }
    let header: Vec<String> = solutions.vars.iter().map(|v| v.to_string()).collect();
    println!("{}", header.join("\t"));
    for row in &solutions.rows {
        let cells: Vec<String> = solutions
            .vars
            .iter()
            .map(|v| row.get(v).map(|t| t.canonical()).unwrap_or_default())
            .collect();
        println!("{}", cells.join("\t"));
    }
}

fn cmd_ask(config: &Config, args: &AskArgs, json: bool) -> anyhow::Result<ExitCode> {
    let loaded = load_pipeline(config)?;
    let pipeline = loaded.pipeline;

    if args.sparql_only {
        match pipeline.formulate(&args.question) {
            Ok(f) => {
                if json {
                    println!(
                        "{}",
                        serde_json::json!({
                            "question": args.question,
                            "questionType": format!("{:?}", f.question_type),
                            "query": f.query_text,
                            "frame": f.frame,
                        })
                    );
                } else {
                    print!("{}", f.query_text);
                }
                return Ok(ExitCode::SUCCESS);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(2));
            }
        }
    }

    match pipeline.answer(&args.question) {
        Ok(answer) => {
            emit_answer(&answer, args.trace, json);
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(2))
        }
    }
}

fn emit_answer(answer: &Answer, trace: bool, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::json!({
                "question": answer.question,
                "questionType": format!("{:?}", answer.question_type),
                "query": answer.query_text,
                "frame": answer.frame,
                "solutions": solutions_json(&answer.solutions),
                "unclosedKb": answer.diagnostics.unclosed_kb,
            })
        );
        return;
    }
    if trace {
        print_trace(&answer.sentence);
        if let Some(frame) = &answer.frame {
            println!("frame: {frame:?}");
        }
    }
    print!("{}", answer.query_text);
    println!();
    print_solutions(&answer.solutions);
}

fn cmd_repl(config: &Config) -> anyhow::Result<ExitCode> {
    let loaded = load_pipeline(config)?;
    let pipeline = loaded.pipeline;
    let stdin = std::io::stdin();
    let mut show_sparql = false;
    let mut show_trace = false;

    println!("geoqa — type a question, :sparql / :trace to toggle, :quit to exit");
    loop {
        print!("> ");
        std::io::stdout().flush()?;
        let mut line = String::new();
        if stdin.lock().read_line(&mut line)? == 0 {
            break;
        }
        let line = line.trim();
        match line {
            "" => continue,
            ":quit" | ":q" => break,
            ":sparql" => {
                show_sparql = !show_sparql;
                println!("sparql display {}", if show_sparql { "on" } else { "off" });
            }
            ":trace" => {
                show_trace = !show_trace;
                println!("trace display {}", if show_trace { "on" } else { "off" });
            }
            question => match pipeline.answer(question) {
                Ok(answer) => {
                    if show_trace {
                        print_trace(&answer.sentence);
                        if let Some(frame) = &answer.frame {
                            println!("frame: {frame:?}");
                        }
                    }
                    if show_sparql {
                        print!("{}", answer.query_text);
                    }
                    print_solutions(&answer.solutions);
                }
                Err(e) => println!("error: {e}"),
            },
        }
    }
    Ok(ExitCode::SUCCESS)
}


fn cmd_eval(config: &Config, args: &EvalArgs, json: bool) -> anyhow::Result<ExitCode> {
    if !args.suite.exists() {
        eprintln!("error: suite `{}` does not exist", args.suite.display());
        return Ok(ExitCode::from(2));
    }
    let loaded = load_pipeline(config)?;
    let pipeline = loaded.pipeline;
    let text = std::fs::read_to_string(&args.suite)?;
    let suite = match parse_suite(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };

    if let Some(method) = args.method {
        let report = match method {
            1 => run_method1(&suite, &pipeline),
            2 => run_method2(&suite, &pipeline),
            other => {
                eprintln!("error: unknown method `{other}`");
                return Ok(ExitCode::from(2));
            }
        };
        if json {
            println!("{}", serde_json::to_string_pretty(&report)?);
        } else {
            println!(
                "{:<36}{:>10}{:>10}{:>12}",
                "Method", "Precision", "Recall", "F-Measure"
            );
            println!(
                "{:<36}{:>10.2}{:>10.2}{:>12.2}",
                report.method.label(),
                report.aggregate.precision,
                report.aggregate.recall,
                report.aggregate.f_measure
            );
        }
        return Ok(ExitCode::SUCCESS);
    }

    let r1 = run_method1(&suite, &pipeline);
    let r2 = run_method2(&suite, &pipeline);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "method1": r1,
                "method2": r2,
            }))?
        );
    } else {
        print!("{}", compare_methods(&r1, &r2)?);
    }
    if args.assert_m1_beats_m2 && r1.aggregate.f_measure <= r2.aggregate.f_measure {
        eprintln!(
            "assertion failed: Method 1 macro-F {:.3} does not exceed Method 2 macro-F {:.3}",
            r1.aggregate.f_measure, r2.aggregate.f_measure
        );
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_train(config: &Config, args: &TrainArgs, json: bool) -> anyhow::Result<ExitCode> {
    if !args.labeled.exists() {
        eprintln!("error: labeled file `{}` does not exist", args.labeled.display());
        return Ok(ExitCode::from(2));
    }
    let (train_frac, test_frac) = match args.split.split_once('/') {
        Some((a, b)) => (a.parse::<f64>().unwrap_or(-1.0), b.parse::<f64>().unwrap_or(-1.0)),
        None => (-1.0, -1.0),
    };
    if !(0.0..1.0).contains(&train_frac) || test_frac <= 0.0 || train_frac <= 0.0 {
        eprintln!("error: bad split `{}`: both fractions must be positive", args.split);
        return Ok(ExitCode::from(2));
    }

    let loaded = load_pipeline(config)?;
    let pipeline = loaded.pipeline;
    let text = std::fs::read_to_string(&args.labeled)?;
    let records = match LabeledFrame::parse_jsonl(&text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };

    let space = FeatureSpace {
        lexicon: &pipeline.lexicon,
        superlatives: &pipeline.superlatives,
    };
    let mut examples = Vec::with_capacity(records.len());
    for record in &records {
        let labels = match record.label_indexes() {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(2));
            }
        };
        let sentence = match pipeline.annotate(&record.question) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(2));
            }
        };
        examples.push((space.featurize(&sentence, &pipeline.kb), labels));
    }

    let train_config = TrainConfig {
        seed: config.seed,
        train_fraction: train_frac,
        ..TrainConfig::default()
    };
    let (model, report) = match train_qt2(&examples, space.dim(), &train_config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    std::fs::write(&args.out, model.to_json())?;

    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "report": report,
                "model": args.out.display().to_string(),
                "seed": config.seed,
            }))?
        );
    } else {
        println!(
            "trained on {} examples, evaluated on {} (seed {})",
            report.train_size, report.test_size, config.seed
        );
        for (attribute, accuracy) in &report.per_attribute {
            println!("  {attribute:<16} accuracy {accuracy:.2}");
        }
        println!("  exact-frame accuracy {:.2}", report.exact_frame_accuracy);
        println!("model written to {}", args.out.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_load_check(config: &Config, json: bool) -> anyhow::Result<ExitCode> {
    let loaded = load_pipeline(config)?;
    let kb = &loaded.pipeline.kb;

    // verify the closure invariants by exhaustive scan
    let mut violations = Vec::new();
    for t in kb.triples() {
        if let Some(obj) = t.object.as_iri() {
            if let Some(decl) = kb.schema.object_property(&t.predicate) {
                if let Some(inv) = &decl.inverse_of {
                    let back = Triple::new(
                        obj.clone(),
                        inv.clone(),
                        geoqa::kb::Term::Iri(t.subject.clone()),
                    );
                    if !kb.contains(&back) {
                        violations.push(format!("missing inverse of {t:?}"));
                    }
                }
                if decl.symmetric {
                    let back = Triple::new(
                        obj.clone(),
                        t.predicate.clone(),
                        geoqa::kb::Term::Iri(t.subject.clone()),
                    );
                    if !kb.contains(&back) {
                        violations.push(format!("missing symmetric pair of {t:?}"));
                    }
                }
            }
            if t.predicate == geoqa::kb::Iri::rdf_type() {
                for (child, parent) in &kb.schema.subclass_pairs {
                    if obj == child {
                        let up = Triple::new(
                            t.subject.clone(),
                            geoqa::kb::Iri::rdf_type(),
                            geoqa::kb::Term::Iri(parent.clone()),
                        );
                        if !kb.contains(&up) {
                            violations.push(format!("missing superclass type of {t:?}"));
                        }
                    }
                }
            }
        }
    }

    if json {
        println!(
            "{}",
            serde_json::json!({
                "classes": kb.schema.classes.len(),
                "objectProperties": kb.schema.object_properties.len(),
                "dataProperties": kb.schema.data_properties.len(),
                "individuals": kb.individuals().len(),
                "triplesBeforeClosure": loaded.triples_before,
                "triplesAfterClosure": kb.len(),
                "closureAdded": loaded.closure_added,
                "violations": violations,
            })
        );
    } else {
        println!("classes:            {}", kb.schema.classes.len());
        println!("object properties:  {}", kb.schema.object_properties.len());
        println!("data properties:    {}", kb.schema.data_properties.len());
        println!("individuals:        {}", kb.individuals().len());
        println!("triples loaded:     {}", loaded.triples_before);
        println!("triples closed:     {}", kb.len());
        println!("closure added:      {}", loaded.closure_added);
        if violations.is_empty() {
            println!("closure invariants: ok");
        } else {
            for v in &violations {
                println!("violation: {v}");
            }
        }
    }
    Ok(if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
