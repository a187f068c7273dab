//! `bareo`: JSON in, JSON out, over the star-topology toolkit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bareo::chromatic::{chromatic_witness, covering_closed_walk, theta};
use bareo::factor::{factor_contraction_first, factor_incidence_first};
use bareo::maps::{
    classify, contraction_script, contraction_vertex_name, induced_from_hom, induced_from_weak_hom,
    vertex_identification, vertexify,
};
use bareo::oracle::census;
use bareo::topology::{closure, interior, is_open, is_topologically_connected, separation_report};
use bareo::{io, Caps, Error, VertexId};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

const SYNOPSIS: &str = "usage: bareo <open-check|closure|interior|connected|separation|continuity|classify|induce|identify|contract|vertexify|factorize|chroma|theta|postman|census> [args]";

#[derive(Parser)]
#[command(name = "bareo", version, about = "Star topology on bare representations of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    /// Contraction, then incidence map.
    Ci,
    /// Incidence map, then contraction.
    Ic,
}

#[derive(Subcommand)]
enum Command {
    /// Is the point set open in the graph?
    OpenCheck { graph: PathBuf, set: PathBuf },
    /// Smallest closed set containing the point set.
    Closure { set: PathBuf },
    /// Largest open set inside the point set.
    Interior { set: PathBuf },
    /// Is B(G) connected?
    Connected { graph: PathBuf },
    /// T0 and Hausdorff report.
    Separation { graph: PathBuf },
    /// Is the point map continuous?
    Continuity { map: PathBuf },
    /// Every class flag of the point map.
    Classify { map: PathBuf },
    /// Point map induced by a (weak) homomorphism.
    Induce {
        #[arg(long, conflicts_with = "weak", required_unless_present = "weak")]
        hom: bool,
        #[arg(long)]
        weak: bool,
        domain: PathBuf,
        codomain: PathBuf,
        assignment: PathBuf,
    },
    /// Merge vertices u and v into w (default "u+v").
    Identify {
        graph: PathBuf,
        u: String,
        v: String,
        w: Option<String>,
    },
    /// Contract a list of edges in order.
    Contract { graph: PathBuf, edges: PathBuf },
    /// Turn a continuous map into a continuous vertex map.
    Vertexify { map: PathBuf },
    /// Factor a continuous vertex map.
    Factorize {
        #[arg(long, value_enum)]
        order: Order,
        map: PathBuf,
    },
    /// Chromatic number with a colouring witness.
    Chroma { graph: PathBuf },
    /// Largest complete graph receiving a continuous surjection.
    Theta { graph: PathBuf },
    /// Shortest closed walk covering every edge.
    Postman { graph: PathBuf },
    /// Exhaustive classification of all point maps between two graphs.
    Census { domain: PathBuf, codomain: PathBuf },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            other => Failure::Domain(other),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: fn(&[u8]) -> bareo::Result<T>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| match e {
        Error::Parse(msg) => Failure::Usage(format!("{}: {msg}", path.display())),
        other => Failure::Domain(other),
    })
}

fn value(x: impl Serialize) -> Outcome {
    serde_json::to_value(x).map_err(|e| Failure::Usage(e.to_string()))
}

fn vertex(s: &str) -> Result<VertexId, Failure> {
    VertexId::new(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn caps() -> Result<Caps, Failure> {
    let mut caps = Caps::default();
    if let Ok(raw) = std::env::var("BAREO_CAP") {
        match raw.trim().parse::<usize>() {
            Ok(n) if (1..=63).contains(&n) => caps.points = n,
            _ => return Err(Failure::Usage(format!("BAREO_CAP must be an integer from 1 to 63, got {raw:?}"))),
        }
    }
    Ok(caps)
}

fn run(command: Command) -> Outcome {
    let caps = caps()?;
    match command {
        Command::OpenCheck { graph, set } => {
            let g = load(&graph, io::parse_graph)?;
            let s = load(&set, io::parse_point_set)?;
            Ok(json!({ "open": is_open(&g, &s)? }))
        }
        Command::Closure { set } => {
            let s = load(&set, io::parse_point_set)?;
            value(closure(s.ambient(), &s)?)
        }
        Command::Interior { set } => {
            let s = load(&set, io::parse_point_set)?;
            value(interior(s.ambient(), &s)?)
        }
        Command::Connected { graph } => {
            let g = load(&graph, io::parse_graph)?;
            Ok(json!({ "connected": is_topologically_connected(&g)? }))
        }
        Command::Separation { graph } => value(separation_report(&load(&graph, io::parse_graph)?)),
        Command::Continuity { map } => {
            let f = load(&map, io::parse_point_map)?;
            Ok(json!({ "continuous": f.is_continuous() }))
        }
        Command::Classify { map } => value(classify(&load(&map, io::parse_point_map)?)),
        Command::Induce {
            hom,
            domain,
            codomain,
            assignment,
            ..
        } => {
            let g = load(&domain, io::parse_graph)?;
            let h = load(&codomain, io::parse_graph)?;
            let fv = load(&assignment, io::parse_assignment)?;
            if hom {
                value(induced_from_hom(&g, &h, &fv)?)
            } else {
                value(induced_from_weak_hom(&g, &h, &fv)?)
            }
        }
        Command::Identify { graph, u, v, w } => {
            let g = load(&graph, io::parse_graph)?;
            let (u, v) = (vertex(&u)?, vertex(&v)?);
            let w = match w {
                Some(w) => vertex(&w)?,
                None => contraction_vertex_name(&u, &v)?,
            };
            value(vertex_identification(&g, &u, &v, &w)?)
        }
        Command::Contract { graph, edges } => {
            let g = load(&graph, io::parse_graph)?;
            let script = load(&edges, io::parse_edge_list)?;
            value(contraction_script(&g, &script)?)
        }
        Command::Vertexify { map } => value(vertexify(&load(&map, io::parse_point_map)?)?),
        Command::Factorize { order, map } => {
            let f = load(&map, io::parse_point_map)?;
            match order {
                Order::Ci => value(factor_contraction_first(&f)?),
                Order::Ic => value(factor_incidence_first(&f)?),
            }
        }
        Command::Chroma { graph } => {
            let (chi, witness) = chromatic_witness(&load(&graph, io::parse_graph)?)?;
            Ok(json!({ "chi": chi, "witness": value(witness)? }))
        }
        Command::Theta { graph } => value(theta(&load(&graph, io::parse_graph)?, &caps)?),
        Command::Postman { graph } => {
            let walk = covering_closed_walk(&load(&graph, io::parse_graph)?, &caps)?;
            Ok(json!({ "length": walk.len() - 1, "walk": value(walk)? }))
        }
        Command::Census { domain, codomain } => {
            let g = load(&domain, io::parse_graph)?;
            let h = load(&codomain, io::parse_graph)?;
            value(census(&g, &h, &caps)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string();
            eprintln!("{}", first.lines().next().unwrap_or("invalid arguments"));
            eprintln!("{SYNOPSIS}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("{SYNOPSIS}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
