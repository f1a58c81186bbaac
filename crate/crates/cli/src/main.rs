//! Command line front end. Results go to stdout as JSON (one value per
//! input), diagnostics to stderr. Exit codes: 0 when every answer is
//! positive, 1 when some answer is negative, 2 for malformed input, 3
//! when a resource limit was hit.

use std::io::{self, BufRead, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use deckrecon::{
    brute_force_preimages, check_conditions, emit_graph6, find_witness, generate_multi_star,
    parse_graph6, reconstruct_auto, survey, ClassWitness, Deck, Graph, VertexSet,
    DEFAULT_PREIMAGE_CAP,
};

#[derive(Parser)]
#[command(
    name = "deckrecon",
    version,
    about = "Vertex-deleted decks: membership, reconstruction, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the vertex-deleted deck of each input graph
    Deck {
        /// A graph6 string, or "-" to read one graph per stdin line
        input: String,
        /// Write the deck to a file instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Evaluate the five membership conditions for an explicit witness
    Check {
        /// A graph6 string, or "-" to read one graph per stdin line
        input: String,
        /// The distinguished witness vertex v1
        #[arg(long)]
        v1: usize,
        /// The other witness vertices, comma separated
        #[arg(long, value_delimiter = ',', value_name = "V,V,...", required = true)]
        others: Vec<usize>,
    },
    /// Search each input graph for a witness of class membership
    Witness {
        /// A graph6 string, or "-" to read one graph per stdin line
        input: String,
    },
    /// Rebuild a graph from its deck
    Reconstruct {
        /// Deck file of graph6 cards, one per line ("-" for stdin)
        #[arg(long, value_name = "FILE")]
        deck: String,
    },
    /// Exhaustively confirm each graph is its deck's only preimage
    Verify {
        /// A graph6 string, or "-" to read one graph per stdin line
        input: String,
        /// Give up after this many pairwise non-isomorphic preimages
        #[arg(long, default_value_t = DEFAULT_PREIMAGE_CAP)]
        cap: usize,
    },
    /// Enumerate all graphs up to an order and verify every member found
    Survey {
        /// Largest vertex count to enumerate (at most 7)
        #[arg(long = "max-n", value_name = "N")]
        max_n: usize,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also write every member found, one graph6 line each
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Generate known class members
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Disjoint union of stars, sizes given as "FIRST;REST,REST,..."
    Stars {
        /// Leaf counts: the part before ";" names the star of v1
        sizes: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Failure {
        Failure { code: 2, message }
    }

    fn of(label: &str, e: deckrecon::Error) -> Failure {
        Failure {
            code: if e.is_resource_limit() { 3 } else { 2 },
            message: format!("{label}: {e}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure { code: 2, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Deck { input, out } => cmd_deck(&input, out.as_deref()),
        Command::Check { input, v1, others } => cmd_check(&input, v1, &others),
        Command::Witness { input } => cmd_witness(&input),
        Command::Reconstruct { deck } => cmd_reconstruct(&deck),
        Command::Verify { input, cap } => cmd_verify(&input, cap),
        Command::Survey { max_n, jobs, out } => cmd_survey(max_n, jobs, out.as_deref()),
        Command::Gen(GenCommand::Stars { sizes }) => cmd_gen_stars(&sizes),
    }
}

/// Reads the positional graph argument: either one graph6 string or,
/// for "-", every non-blank non-comment stdin line. Returns each graph
/// with a label for diagnostics.
fn read_graphs(input: &str) -> Result<Vec<(String, Graph)>, Failure> {
    if input != "-" {
        let g = parse_graph6(input)
            .map_err(|e| Failure::input(format!("argument {input:?}: {e}")))?;
        return Ok(vec![(input.to_string(), g)]);
    }
    let mut graphs = Vec::new();
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let g = parse_graph6(trimmed)
            .map_err(|e| Failure::input(format!("stdin line {}: {e}", i + 1)))?;
        graphs.push((format!("stdin line {}", i + 1), g));
    }
    if graphs.is_empty() {
        return Err(Failure::input("no graphs on stdin".to_string()));
    }
    Ok(graphs)
}

fn write_out(out: Option<&std::path::Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_deck(input: &str, out: Option<&std::path::Path>) -> Result<bool, Failure> {
    let mut content = String::new();
    for (label, g) in read_graphs(input)? {
        let deck = Deck::from_graph(&g).map_err(|e| Failure::of(&label, e))?;
        content.push_str(&format!(
            "# deck of {}\n",
            emit_graph6(&g).map_err(|e| Failure::of(&label, e))?
        ));
        content.push_str(&deck.emit());
    }
    write_out(out, &content)?;
    Ok(true)
}

fn cmd_check(input: &str, v1: usize, others: &[usize]) -> Result<bool, Failure> {
    let set: VertexSet = others.iter().copied().collect();
    let witness =
        ClassWitness::new(v1, set).map_err(|e| Failure::of("witness", e))?;
    let mut all_hold = true;
    for (label, g) in read_graphs(input)? {
        let report = check_conditions(&g, &witness).map_err(|e| Failure::of(&label, e))?;
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
        all_hold &= report.all_hold();
    }
    Ok(all_hold)
}

fn cmd_witness(input: &str) -> Result<bool, Failure> {
    let mut all_found = true;
    for (_, g) in read_graphs(input)? {
        match find_witness(&g) {
            Some(w) => println!("{}", serde_json::to_string(&w).expect("witness serializes")),
            None => {
                println!("null");
                all_found = false;
            }
        }
    }
    Ok(all_found)
}

fn cmd_reconstruct(deck_path: &str) -> Result<bool, Failure> {
    let text = if deck_path == "-" {
        let mut buf = String::new();
        io::stdin().lock().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(deck_path)
            .map_err(|e| Failure::input(format!("{deck_path}: {e}")))?
    };
    let deck = Deck::parse(&text).map_err(|e| Failure::of(deck_path, e))?;
    match reconstruct_auto(&deck).map_err(|e| Failure::of(deck_path, e))? {
        Some(result) => {
            println!("{}", serde_json::to_string(&result).expect("result serializes"));
            Ok(true)
        }
        None => {
            println!("null");
            Ok(false)
        }
    }
}

fn cmd_verify(input: &str, cap: usize) -> Result<bool, Failure> {
    let mut all_unique = true;
    for (label, g) in read_graphs(input)? {
        let deck = Deck::from_graph(&g).map_err(|e| Failure::of(&label, e))?;
        let preimages = brute_force_preimages(&deck, cap).map_err(|e| Failure::of(&label, e))?;
        let unique = preimages.len() == 1
            && deckrecon::is_isomorphic(&g, &preimages[0])
                .map_err(|e| Failure::of(&label, e))?
                .is_some();
        println!(
            "{}",
            serde_json::json!({
                "graph6": emit_graph6(&g).map_err(|e| Failure::of(&label, e))?,
                "unique": unique,
                "preimages": preimages.len(),
            })
        );
        all_unique &= unique;
    }
    Ok(all_unique)
}

fn cmd_survey(max_n: usize, jobs: usize, out: Option<&std::path::Path>) -> Result<bool, Failure> {
    let report = survey(max_n, jobs, |row| {
        println!("{}", serde_json::to_string(row).expect("row serializes"));
        let _ = io::stdout().flush();
    })
    .map_err(|e| Failure::of("survey", e))?;
    for row in &report.battery {
        println!("{}", serde_json::to_string(row).expect("row serializes"));
    }
    if let Some(path) = out {
        let mut content = String::new();
        for member in &report.members {
            content.push_str(member);
            content.push('\n');
        }
        std::fs::write(path, content)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    let clean = report.rows.iter().all(|r| r.counterexamples == 0)
        && report
            .battery
            .iter()
            .all(|b| b.member && b.reconstructed && b.unique);
    Ok(clean)
}

fn cmd_gen_stars(sizes: &str) -> Result<bool, Failure> {
    let bad = || {
        Failure::input(format!(
            "sizes {sizes:?} must look like \"FIRST;REST,REST,...\" with numeric sizes"
        ))
    };
    let (first_text, rest_text) = sizes.split_once(';').ok_or_else(bad)?;
    let first: usize = first_text.trim().parse().map_err(|_| bad())?;
    let rest: Vec<usize> = rest_text
        .split(',')
        .map(|part| part.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let (g, witness) = generate_multi_star(first, &rest).map_err(|e| Failure::of("stars", e))?;
    println!(
        "{}",
        serde_json::json!({
            "graph6": emit_graph6(&g).map_err(|e| Failure::of("stars", e))?,
            "n": g.n(),
            "witness": witness,
        })
    );
    Ok(true)
}
