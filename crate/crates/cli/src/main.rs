use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use piblock::blocks::{analyze_blocks, defect_group, defect_orders_all_choices, pi_blocks};
use piblock::catalog::{load_corpus, parse_str, Catalog};
use piblock::chartab::cached_table;
use piblock::perm::{Group, DEFAULT_CAP};
use piblock::run::{run, RunConfig, RunOutput, Suite};
use piblock::structure::{is_pi_separable, PrimeSet};
use piblock::verify::olsson_counterexample;

#[derive(Parser)]
#[command(name = "piblock", version, about = "Character tables, p-blocks and π-blocks of permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Directory of `.grp` catalog files used to resolve group names.
    #[arg(long, default_value = "corpus")]
    corpus: PathBuf,
    /// Seed for every randomized choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumeration cap on group orders.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Emit JSON, to the given file or to stdout.
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes.
    Classes {
        /// Corpus name, or a builder such as `psl2:7` or `psl2-gamma:8:3`.
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// The exact character table.
    Chartab {
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// p-blocks with their defect groups.
    Blocks {
        group: String,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// π-blocks with their defect groups.
    Piblocks {
        group: String,
        /// Comma-separated primes, e.g. `2,3`.
        #[arg(long)]
        pi: PrimeSet,
        #[command(flatten)]
        common: Common,
    },
    /// The defect group of one π-block.
    Defect {
        group: String,
        #[arg(long)]
        pi: PrimeSet,
        /// Block index as listed by `piblocks`.
        #[arg(long, default_value_t = 0)]
        block: usize,
        /// Also collect defect orders over every choice in the recursion.
        #[arg(long)]
        all_choices: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Checks the bounds over the corpus; exits non-zero on any violation.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Restrict the π sweeps to subsets of this set.
        #[arg(long)]
        pi: Option<PrimeSet>,
        #[arg(long, default_value_t = RunConfig::default().max_order)]
        max_order: usize,
        #[arg(long, default_value_t = RunConfig::default().subgroup_budget)]
        subgroup_budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The counterexample PSL(2,32)⋊C5 with π = {2,3,11,31}.
    Olsson {
        #[command(flatten)]
        common: Common,
    },
    /// Every suite over the corpus plus the counterexample, with a per-group
    /// summary.
    CorpusRun {
        #[arg(long)]
        pi: Option<PrimeSet>,
        #[arg(long, default_value_t = RunConfig::default().max_order)]
        max_order: usize,
        /// Skip the counterexample.
        #[arg(long)]
        no_olsson: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every checked statement held.
fn dispatch(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Classes { group, common } => {
            setup(&common)?;
            let g = resolve(&group, &common)?;
            let cd = g.classes();
            let rows: Vec<Value> = cd
                .classes
                .iter()
                .map(|c| json!({"representative": c.representative.to_string(), "size": c.size, "order": c.order}))
                .collect();
            let value = json!({"group": group, "order": g.order(), "classes": rows});
            emit(&common, &value, || {
                let mut s = format!("{group}: order {}, {} classes\n", g.order(), cd.classes.len());
                for (i, c) in cd.classes.iter().enumerate() {
                    s += &format!("{i:>4}  order {:>3}  size {:>7}  {}\n", c.order, c.size, c.representative);
                }
                s
            })?;
            Ok(true)
        }
        Command::Chartab { group, common } => {
            setup(&common)?;
            let g = resolve(&group, &common)?;
            let t = cached_table(&g, common.seed)?;
            t.verify()?;
            let cd = g.classes();
            let values: Vec<Vec<String>> = (0..t.len())
                .map(|chi| t.character(chi).iter().map(ToString::to_string).collect())
                .collect();
            let value = json!({
                "group": group,
                "order": g.order(),
                "dixon_prime": t.dixon_prime(),
                "classes": cd.classes.iter().map(|c| json!({"representative": c.representative.to_string(), "size": c.size, "order": c.order})).collect::<Vec<_>>(),
                "degrees": t.degrees(),
                "characters": values,
            });
            emit(&common, &value, || {
                let mut s = format!("{group}: order {}, {} classes\n", g.order(), t.len());
                s += &format!("{:>6}", "size");
                for c in &cd.classes {
                    s += &format!(" {:>10}", c.size);
                }
                s += &format!("\n{:>6}", "order");
                for c in &cd.classes {
                    s += &format!(" {:>10}", c.order);
                }
                s += "\n";
                for (chi, row) in values.iter().enumerate() {
                    s += &format!("X.{chi:<4}");
                    for v in row {
                        s += &format!(" {v:>10}");
                    }
                    s += "\n";
                }
                s
            })?;
            Ok(true)
        }
        Command::Blocks { group, p, common } => {
            let pi = PrimeSet::singleton(p)?;
            blocks(&group, &pi, &common)
        }
        Command::Piblocks { group, pi, common } => blocks(&group, &pi, &common),
        Command::Defect {
            group,
            pi,
            block,
            all_choices,
            common,
        } => {
            setup(&common)?;
            let g = resolve(&group, &common)?;
            if !is_pi_separable(&g, &pi)? {
                bail!("{group} is not {pi}-separable");
            }
            let t = cached_table(&g, common.seed)?;
            let partition = pi_blocks(&t, &pi, common.seed)?;
            let Some(b) = partition.get(block) else {
                bail!("block index {block} out of range (0..{})", partition.len());
            };
            let d = defect_group(&g, &pi, b, common.seed)?;
            let orders = if all_choices {
                Some(defect_orders_all_choices(&g, &pi, b, common.seed)?)
            } else {
                None
            };
            let value = json!({
                "group": group,
                "pi": pi.to_string(),
                "block": block,
                "characters": b,
                "order": d.order(),
                "generators": d.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "abelian": d.is_abelian(),
                "all_choice_orders": orders,
            });
            emit(&common, &value, || {
                let mut s = format!(
                    "{group}, π = {pi}, block {block} {b:?}: defect group of order {}{}\n",
                    d.order(),
                    if d.is_abelian() { " (abelian)" } else { "" }
                );
                for gen in d.generators() {
                    s += &format!("  {gen}\n");
                }
                if let Some(o) = &orders {
                    s += &format!("orders over all choices: {o:?}\n");
                }
                s
            })?;
            Ok(true)
        }
        Command::Verify {
            suite,
            pi,
            max_order,
            subgroup_budget,
            common,
        } => {
            setup(&common)?;
            let config = RunConfig {
                cap: common.cap,
                seed: common.seed,
                pi,
                suite,
                max_order,
                subgroup_budget,
                ..RunConfig::default()
            };
            let catalog = if suite == Suite::Olsson {
                Catalog::new(Vec::new(), common.cap)?
            } else {
                open_corpus(&common)?
            };
            let out = run(&catalog, &config)?;
            emit(&common, &serde_json::to_value(&out)?, || summary_text(&out))?;
            Ok(out.summary.violated == 0)
        }
        Command::Olsson { common } => {
            setup(&common)?;
            let o = olsson_counterexample(common.seed, common.cap.max(DEFAULT_CAP))?;
            emit(&common, &serde_json::to_value(&o)?, || {
                let mut s = format!(
                    "G = PSL(2,32):C5, |G| = {} = {}, π = {}\n",
                    o.group_order,
                    o.factorization
                        .iter()
                        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
                        .collect::<Vec<_>>()
                        .join("·"),
                    o.pi
                );
                s += &format!(
                    "|O_π(G)| = {}, π-blocks = {}, k(B) = k(G) = {}, |D| = {}, |D:D'| = {}, k0(B) = {}, linear characters = {}\n",
                    o.o_pi_order, o.block_count, o.block_size, o.defect_order, o.defect_abelianization, o.k0, o.linear_characters
                );
                for (name, ok) in &o.checks {
                    s += &format!("{} {name}\n", if *ok { "PASS" } else { "FAIL" });
                }
                s
            })?;
            Ok(o.all_passed())
        }
        Command::CorpusRun {
            pi,
            max_order,
            no_olsson,
            common,
        } => {
            setup(&common)?;
            let catalog = open_corpus(&common)?;
            let config = RunConfig {
                cap: common.cap,
                seed: common.seed,
                pi,
                max_order,
                ..RunConfig::default()
            };
            let mut out = run(&catalog, &config)?;
            if !no_olsson {
                let extra = run(
                    &Catalog::new(Vec::new(), common.cap)?,
                    &RunConfig {
                        suite: Suite::Olsson,
                        ..config.clone()
                    },
                )?;
                merge(&mut out, extra);
            }
            emit(&common, &serde_json::to_value(&out)?, || {
                let mut s = String::new();
                let mut rows: std::collections::BTreeMap<&str, [usize; 4]> = Default::default();
                for r in &out.reports {
                    let row = rows.entry(&r.group).or_default();
                    row[r.verdict as usize] += 1;
                }
                s += &format!("{:<16} {:>6} {:>8} {:>8} {:>6}\n", "group", "holds", "equality", "violated", "n/a");
                for (g, [h, e, v, o]) in rows {
                    s += &format!("{g:<16} {h:>6} {e:>8} {v:>8} {o:>6}\n");
                }
                s + &summary_text(&out)
            })?;
            Ok(out.summary.violated == 0)
        }
    }
}

fn blocks(group: &str, pi: &PrimeSet, common: &Common) -> anyhow::Result<bool> {
    setup(common)?;
    let g = resolve(group, common)?;
    let a = analyze_blocks(&g, pi, common.seed)?;
    emit(common, &serde_json::to_value(&a)?, || {
        let mut s = format!("{group}: order {}, π = {}, {} block(s)\n", a.group_order, a.pi, a.blocks.len());
        if let Some(note) = &a.note {
            s += &format!("note: {note}\n");
        }
        for (i, b) in a.blocks.iter().enumerate() {
            s += &format!("block {i}: k = {}, degrees {:?}", b.k, b.degrees);
            if let Some(d) = &b.defect {
                s += &format!(
                    ", |D| = {}, |D:D'| = {}, {}abelian, k0 = {}",
                    d.order,
                    d.abelianization,
                    if d.abelian { "" } else { "non-" },
                    d.k0
                );
            }
            s += "\n";
        }
        s
    })?;
    Ok(true)
}

fn summary_text(out: &RunOutput) -> String {
    let s = &out.summary;
    let mut text = format!(
        "{} groups, {} reports: {} hold, {} equality, {} violated, {} out of hypothesis, {} partial\n",
        s.groups, s.reports, s.holds, s.equality, s.violated, s.out_of_hypothesis, s.partial
    );
    for r in out.violations() {
        text += &format!(
            "VIOLATED {} {} {:?}: {} vs {} {:?}\n",
            r.group, r.statement, r.params, r.lhs, r.rhs, r.witnesses
        );
    }
    text
}

fn merge(out: &mut RunOutput, extra: RunOutput) {
    let s = &mut out.summary;
    s.reports += extra.summary.reports;
    s.holds += extra.summary.holds;
    s.equality += extra.summary.equality;
    s.violated += extra.summary.violated;
    s.out_of_hypothesis += extra.summary.out_of_hypothesis;
    s.partial += extra.summary.partial;
    out.reports.extend(extra.reports);
}

fn setup(common: &Common) -> anyhow::Result<()> {
    if let Some(n) = common.workers {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn open_corpus(common: &Common) -> anyhow::Result<Catalog> {
    load_corpus(&common.corpus, common.cap)
        .with_context(|| format!("loading corpus {}", common.corpus.display()))
}

/// A corpus name, or a builder written with colons (`symmetric:4`).
fn resolve(name: &str, common: &Common) -> anyhow::Result<Arc<Group>> {
    if common.corpus.is_dir() {
        let catalog = open_corpus(common)?;
        if catalog.entry(name).is_some() {
            return Ok(catalog.build(name)?.group.clone());
        }
    }
    let spec = name.replace(':', " ");
    let record = format!("group inline\nbuilder {spec}\nend\n");
    let entries = parse_str("<command line>", &record)
        .with_context(|| format!("{name:?} is neither a corpus group nor a builder"))?;
    let catalog = Catalog::new(entries, common.cap)?;
    Ok(catalog.build("inline")?.group.clone())
}

fn emit(common: &Common, value: &Value, text: impl FnOnce() -> String) -> anyhow::Result<()> {
    match &common.json {
        None => print!("{}", text()),
        Some(p) if p == Path::new("-") => println!("{}", serde_json::to_string_pretty(value)?),
        Some(p) => {
            let mut f = std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
            writeln!(f, "{}", serde_json::to_string_pretty(value)?)?;
            print!("{}", text());
        }
    }
    Ok(())
}
