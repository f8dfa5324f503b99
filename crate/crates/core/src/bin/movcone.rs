use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use movcone::atlas::DEFAULT_MAX_STEPS;
use movcone::export::json::{self, ErrorDoc, SymLayer};
use movcone::export::svg::{self, Palette, RenderConfig};
use movcone::export::verify::{self, GridFilter, Suite};
use movcone::{word_budget, CoxeterSystem, Error};

#[derive(Parser)]
#[command(name = "movcone", version, about = "Movable cones of (1,…,1) Calabi-Yau complete intersections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(clap::Args)]
struct Render {
    #[arg(long, default_value_t = 3)]
    depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Palette::Paper)]
    palette: Palette,
    /// Label the fundamental domain in SVG output.
    #[arg(long)]
    labels: bool,
    /// Chart window `x_min,y_min,x_max,y_max`.
    #[arg(long, value_delimiter = ',', num_args = 4, allow_hyphen_values = true)]
    viewport: Option<Vec<f64>>,
}

impl Render {
    fn config(&self) -> RenderConfig {
        let mut cfg = RenderConfig::with_depth(self.depth);
        cfg.palette = self.palette;
        cfg.labels = self.labels;
        if let Some(v) = &self.viewport {
            cfg.viewport = [v[0], v[1], v[2], v[3]];
        }
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix, reflections and quadric of the (n, m) system.
    System {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
    },
    /// Chambers w·D for reduced words up to a depth.
    Chambers {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        render: Render,
    },
    /// Locate a divisor class in the fundamental domain.
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
        /// Comma-separated rationals, e.g. `-1,4,5` or `1/2,0,3`.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Orbits of the boundary cones.
    Boundary {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        render: Render,
    },
    /// The symmetric (2, 3) example with an extra involution.
    Symmetric {
        #[arg(long, value_enum, default_value_t = SymLayer::Movable)]
        layer: SymLayer,
        #[command(flatten)]
        render: Render,
    },
    /// Run property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<usize>,
    },
}

fn run(cmd: Command) -> Result<(String, ExitCode), Error> {
    let budget = word_budget();
    let out = match cmd {
        Command::System { n, m } => json::to_json(&json::system_doc(n, m)?),
        Command::Chambers { n, m, render } => match render.format {
            Format::Json => json::to_json(&json::chambers_doc(n, m, render.depth, budget)?),
            Format::Svg => svg::render_chambers(&CoxeterSystem::new(n, m, true)?, &render.config(), budget)?,
        },
        Command::Classify { n, m, class, max_steps } => {
            let class = json::parse_class(&class)?;
            if max_steps == 0 {
                return Err(Error::InvalidParameters("--max-steps must be positive".into()));
            }
            json::to_json(&json::classify_doc(n, m, &class, max_steps)?)
        }
        Command::Boundary { n, m, render } => {
            // builds the document first so that n = 1 is rejected for both formats
            let doc = json::boundary_doc(n, m, render.depth, budget)?;
            match render.format {
                Format::Json => json::to_json(&doc),
                Format::Svg => svg::render_boundary(&CoxeterSystem::new(n, m, true)?, &render.config(), budget)?,
            }
        }
        Command::Symmetric { layer, render } => match render.format {
            Format::Json => json::to_json(&json::symmetric_doc(render.depth, layer, budget)?),
            Format::Svg => svg::render_symmetric(layer, &render.config(), budget)?,
        },
        Command::Verify { suite, n, m } => {
            let report = verify::run(suite, GridFilter { n, m }, budget);
            let code = if report.passed { ExitCode::SUCCESS } else { ExitCode::from(3) };
            return Ok((json::to_json(&report), code));
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{}", json::to_json(&ErrorDoc::usage(e.to_string().trim_end())));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprint!("{}", json::to_json(&ErrorDoc::from_error(&e)));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
