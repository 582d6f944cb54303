//! Batch CLI exposing every pipeline stage.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/validation error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use featsel::classifier::{self, TrainConfig};
use featsel::data::{project, Dataset};
use featsel::error::Result;
use featsel::selector::{self, Evaluation, SelectionConfig};
use featsel::{appearance, io, mutual_info, rng, sbe, synth};

#[derive(Parser)]
#[command(name = "featsel", version, about = "Wrapper feature selection with backward elimination")]
struct Cli {
    /// Worker threads for subset evaluations (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DataArgs {
    /// Input dataset path.
    #[arg(long)]
    data: PathBuf,
    /// Treat the input as LIBSVM text instead of CSV.
    #[arg(long)]
    libsvm: bool,
    /// Skip a CSV header line.
    #[arg(long)]
    header: bool,
}

impl DataArgs {
    fn load(&self) -> Result<(Dataset, Vec<String>)> {
        if self.libsvm {
            io::load_libsvm(&self.data)
        } else {
            io::load_csv(&self.data, self.header)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the selection loop and write a JSON run report.
    Select(SelectArgs),
    /// Rank features by mutual information with the class (filter baseline).
    RankMi {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value_t = 10)]
        bins: usize,
    },
    /// Evaluate a feature subset with k-fold cross validation, print the UAR.
    Eval {
        #[command(flatten)]
        data: DataArgs,
        /// File with one feature id per line.
        #[arg(long)]
        features: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 30)]
        epochs: usize,
    },
    /// Generate a synthetic dataset with planted relevant features.
    GenSynth {
        #[arg(long, default_value_t = 200)]
        samples_per_class: usize,
        #[arg(long, default_value_t = 4)]
        relevant: usize,
        #[arg(long, default_value_t = 0)]
        redundant: usize,
        #[arg(long, default_value_t = 12)]
        irrelevant: usize,
        #[arg(long, default_value_t = 2.0)]
        delta: f64,
        #[arg(long, default_value_t = 0.3)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Ground-truth JSON path.
        #[arg(long)]
        truth_out: Option<PathBuf>,
    },
    /// Train an appearance model (label 1 = positive, label 0 = negative).
    ModelTrain {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        features: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score feature rows (CSV without a label column) with a model.
    ModelScore {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        header: bool,
    },
    /// Brute-force backward elimination on the fixed split (cross-check).
    SbeOracle {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        target: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 30)]
        epochs: usize,
    },
}

#[derive(Args)]
struct SelectArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Optional JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of features to keep (global stopping criterion).
    #[arg(long)]
    target: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Cross-validation folds per subset evaluation.
    #[arg(long)]
    k: Option<usize>,
    /// Use the deterministic fixed split instead of k-fold.
    #[arg(long)]
    fixed_split: bool,
    /// Local stopping threshold on the stdev of iteration UARs.
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    min_iters: Option<usize>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Fraction of the remaining features removed per step.
    #[arg(long)]
    fraction: Option<f64>,
    #[arg(long)]
    bins: Option<usize>,
    /// Disable the mutual-information counter score.
    #[arg(long)]
    no_counter: bool,
    /// Override the random subset size (>= remaining count switches to
    /// exhaustive leave-one-out).
    #[arg(long)]
    subset_size: Option<usize>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    /// Report output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the selected ids, one per line.
    #[arg(long)]
    ids_out: Option<PathBuf>,
}

impl SelectArgs {
    fn resolve_config(&self) -> Result<SelectionConfig> {
        let mut cfg = match &self.config {
            Some(path) => io::load_config(path)?,
            None => SelectionConfig::default(),
        };
        if let Some(t) = self.target {
            cfg.target_count = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
            cfg.train.seed = s;
        }
        if self.fixed_split {
            cfg.evaluation = Evaluation::FixedSplit;
        } else if let Some(k) = self.k {
            cfg.evaluation = Evaluation::KFold { k };
        }
        if let Some(tau) = self.tau {
            cfg.local_threshold = tau;
        }
        if let Some(v) = self.min_iters {
            cfg.min_iterations_per_step = v;
        }
        if let Some(v) = self.max_iters {
            cfg.max_iterations_per_step = v;
        }
        if let Some(v) = self.fraction {
            cfg.removal_fraction = v;
        }
        if let Some(v) = self.bins {
            cfg.n_bins = v;
        }
        if self.no_counter {
            cfg.counter_score_enabled = false;
        }
        if self.subset_size.is_some() {
            cfg.subset_size_override = self.subset_size;
        }
        if let Some(v) = self.c {
            cfg.train.c = v;
        }
        if let Some(v) = self.epochs {
            cfg.train.epochs = v;
        }
        Ok(cfg)
    }
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Select(args) => run_select(args),
        Command::RankMi { data, bins } => {
            let (dataset, _) = data.load()?;
            let gains = mutual_info::feature_information(&dataset, &dataset.feature_ids(), bins)?;
            let mut ranked: Vec<(usize, f64)> = gains.into_iter().collect();
            ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
            println!("id\tbits");
            for (id, bits) in ranked {
                println!("{id}\t{bits:.6}");
            }
            Ok(())
        }
        Command::Eval {
            data,
            features,
            k,
            seed,
            c,
            epochs,
        } => {
            let (dataset, _) = data.load()?;
            let ids = io::read_ids(&features)?;
            let view = project(&dataset, &ids)?;
            let train = TrainConfig { c, epochs, seed };
            let counts = classifier::kfold_confusion(&view, k, &train, seed)?;
            println!("uar {:.6}", classifier::uar(&counts)?);
            Ok(())
        }
        Command::GenSynth {
            samples_per_class,
            relevant,
            redundant,
            irrelevant,
            delta,
            sigma,
            seed,
            out,
            truth_out,
        } => {
            let spec = synth::SynthSpec {
                n_samples_per_class: samples_per_class,
                n_relevant: relevant,
                n_redundant: redundant,
                n_irrelevant: irrelevant,
                class_separation: delta,
                redundancy_noise: sigma,
                seed,
            };
            let (dataset, truth) = synth::generate(&spec)?;
            io::write_csv(&dataset, &["0".into(), "1".into()], &out)?;
            if let Some(path) = truth_out {
                std::fs::write(&path, serde_json::to_string_pretty(&truth)?)?;
            }
            println!(
                "wrote {} samples x {} features to {}",
                dataset.n_samples(),
                dataset.n_features(),
                out.display()
            );
            Ok(())
        }
        Command::ModelTrain { data, features, out } => {
            let (dataset, _) = data.load()?;
            let ids = io::read_ids(&features)?;
            let mut positives = Vec::new();
            let mut negatives = Vec::new();
            for r in 0..dataset.n_samples() {
                let row = dataset.row(r).to_vec();
                if dataset.label(r) == 1 {
                    positives.push(row);
                } else {
                    negatives.push(row);
                }
            }
            let model = appearance::build_model(&positives, &negatives, &ids)?;
            std::fs::write(&out, model.to_json()?)?;
            println!("wrote model over {} features to {}", ids.len(), out.display());
            Ok(())
        }
        Command::ModelScore { model, data, header } => {
            let text = std::fs::read_to_string(&model)?;
            let model = appearance::AppearanceModel::from_json(&text)?;
            let rows = io::load_feature_matrix(&data, header)?;
            for row in &rows {
                println!("{}", appearance::region_score(&model, row)?);
            }
            Ok(())
        }
        Command::SbeOracle {
            data,
            target,
            seed,
            c,
            epochs,
        } => {
            let (dataset, _) = data.load()?;
            let train = TrainConfig { c, epochs, seed };
            let (removed, kept) = sbe::sbe_removal_sequence(&dataset, target, &train)?;
            for id in &removed {
                println!("{id}");
            }
            println!(
                "# selected: {}",
                kept.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
            );
            Ok(())
        }
    }
}

fn holdout_uar(dataset: &Dataset, ids: &[usize], config: &SelectionConfig, salt: u64) -> Result<f64> {
    let view = project(dataset, ids)?;
    let k = match config.evaluation {
        Evaluation::KFold { k } => k,
        Evaluation::FixedSplit => 3,
    };
    let seed = rng::mix(config.seed, rng::splitmix(0x686f_6c64_6f75_7400) ^ salt);
    let counts = classifier::kfold_confusion(&view, k, &config.train, seed)?;
    classifier::uar(&counts)
}

fn run_select(args: SelectArgs) -> Result<()> {
    let (dataset, label_names) = args.data.load()?;
    let config = args.resolve_config()?;
    let start = std::time::Instant::now();
    let (result, step_wall_ms) = selector::run_selection_timed(&dataset, &config)?;
    let total_wall_ms = start.elapsed().as_secs_f64() * 1e3;

    let uar_full = holdout_uar(&dataset, &dataset.feature_ids(), &config, 0)?;
    let uar_selected = holdout_uar(&dataset, &result.selected_ids, &config, 1)?;

    let report = io::RunReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        data_path: args.data.data.display().to_string(),
        config,
        label_names,
        selected_ids: result.selected_ids.clone(),
        steps: result.steps,
        evaluations: result.evaluations,
        uar_full,
        uar_selected,
        step_wall_ms,
        total_wall_ms,
    };
    let json = report.to_json()?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, &json)?;
            println!(
                "selected {} features: {}",
                result.selected_ids.len(),
                result
                    .selected_ids
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!("uar full {uar_full:.4} -> selected {uar_selected:.4}");
        }
        None => println!("{json}"),
    }
    if let Some(path) = &args.ids_out {
        io::write_ids(&report.selected_ids, path)?;
    }
    Ok(())
}
