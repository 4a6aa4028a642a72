use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hscat::corpus::Corpus;
use hscat::io::{self, InputError};
use hscat::suite::{run_suite, SuiteConfig, UnknownSuite};
use hscat::dot;
use hscat_core::basechange::BaseChange;
use hscat_core::fibration::{sections, universal_fibration, TransferredFib};
use hscat_core::universe::{subobject_classifier, truncation};
use hscat_core::{
    build_universe, builtin_fib, classify_small, grothendieck, realign, DiscreteFibration, Error, FibKind, Guard,
    NerveAdjunction,
};

#[derive(Parser)]
#[command(name = "hscat", version, about = "Finite presheaf models of type-theoretic universes")]
struct Cli {
    /// Abort enumerations whose estimated size exceeds N.
    #[arg(long, global = true, default_value_t = Guard::default().0)]
    guard: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Category of elements of a presheaf.
    Elements {
        #[arg(long)]
        presheaf: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
        /// Also write the projection functor.
        #[arg(long)]
        projection: Option<PathBuf>,
    },
    /// Nerve of a finite category over a base.
    Nerve {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        cat: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// The universe V and its element presheaf.
    Universe {
        #[arg(long)]
        base: PathBuf,
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        #[arg(short)]
        o: Option<PathBuf>,
        #[arg(long)]
        el: Option<PathBuf>,
        #[arg(long)]
        proj: Option<PathBuf>,
    },
    /// Classifying map of a small family.
    Classify {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        #[arg(short)]
        o: Option<PathBuf>,
        /// Also write the top map into the element presheaf.
        #[arg(long)]
        top: Option<PathBuf>,
    },
    /// Subobject classifier, or the characteristic map of a mono.
    Omega {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        mono: Option<PathBuf>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Truncation modality on the universe.
    Truncate {
        #[arg(long)]
        base: PathBuf,
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Extend a partial classifying map along a mono.
    Realign {
        #[arg(long)]
        mono: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        partial: PathBuf,
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Restriction and Kan extensions along a functor.
    Basechange {
        #[arg(long)]
        functor: PathBuf,
        op: BaseOp,
        presheaf: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Fibration structures.
    Fib {
        #[arg(long, global = true, default_value = "trivial")]
        kind: FibKind,
        #[command(subcommand)]
        what: FibCmd,
    },
    /// Run a proposition suite over the corpus.
    Suite {
        name: String,
        /// Corpus directory; the built-in corpus when absent.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        alpha: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Graphviz export.
    Dot {
        kind: DotKind,
        file: PathBuf,
        #[arg(long, default_value = "G")]
        name: String,
    },
    Corpus {
        #[command(subcommand)]
        what: CorpusCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseOp {
    Restrict,
    Lan,
    Ran,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotKind {
    Category,
    Fibration,
    Presheaf,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Slice squares, finality and the universe comparison square.
    Basechange {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long, default_value_t = 3)]
        alpha: usize,
    },
    /// Validate a category file.
    Category { file: PathBuf },
}

#[derive(Subcommand)]
enum FibCmd {
    /// The universal small fibration.
    Universal {
        #[arg(long)]
        base: PathBuf,
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Fib transferred along a functor, applied to a family.
    Transfer {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Write the built-in corpus.
    Generate { dir: PathBuf },
}

fn report(checks: &[(&str, bool)]) -> bool {
    for (name, ok) in checks {
        println!("{} {name}", if *ok { "ok  " } else { "FAIL" });
    }
    checks.iter().all(|c| c.1)
}

fn run(cli: Cli) -> Result<bool> {
    let guard = Guard(cli.guard);
    match cli.cmd {
        Cmd::Elements { presheaf, o, projection } => {
            let el = grothendieck(&io::load_presheaf(&presheaf)?);
            io::emit(o.as_deref(), &el.category().to_raw())?;
            if let Some(p) = projection {
                io::write_json(&p, &io::functor_file_inline(el.projection()))?;
            }
        }
        Cmd::Nerve { base, cat, o } => {
            let adj = NerveAdjunction::new(&io::load_category(&base)?, guard);
            let nu = adj.nerve(&io::load_category(&cat)?)?;
            io::emit(o.as_deref(), &io::presheaf_file(nu.presheaf()))?;
        }
        Cmd::Universe { base, alpha, o, el, proj } => {
            let u = build_universe(&NerveAdjunction::new(&io::load_category(&base)?, guard), alpha)?;
            io::emit(o.as_deref(), &io::presheaf_file(u.v()))?;
            if let Some(p) = el {
                io::write_json(&p, &io::presheaf_file(u.vdot()))?;
            }
            if let Some(p) = proj {
                io::write_json(&p, &io::map_file(u.proj()))?;
            }
        }
        Cmd::Classify { family, alpha, o, top } => {
            let f = io::load_map(&family)?;
            let u = build_universe(&NerveAdjunction::new(f.base(), guard), alpha)?;
            let cl = classify_small(&f, &u)?;
            io::emit(o.as_deref(), &io::map_file(&cl.map))?;
            if let Some(p) = top {
                io::write_json(&p, &io::map_file(&cl.top))?;
            }
        }
        Cmd::Omega { base, mono, o } => {
            let sc = subobject_classifier(&NerveAdjunction::new(&io::load_category(&base)?, guard))?;
            match mono {
                Some(m) => io::emit(o.as_deref(), &io::map_file(&sc.classify_sub(&io::load_map(&m)?)?))?,
                None => io::emit(o.as_deref(), &io::presheaf_file(sc.omega()))?,
            }
        }
        Cmd::Truncate { base, alpha, o } => {
            let t = truncation(&NerveAdjunction::new(&io::load_category(&base)?, guard), alpha)?;
            io::emit(o.as_deref(), &io::map_file(&t.modality))?;
            let ok = report(&[
                ("retraction", t.is_retraction()),
                ("idempotent", t.is_idempotent()),
                ("left_square_pullback", t.left_square_is_pullback()),
            ]);
            return Ok(ok);
        }
        Cmd::Realign { mono, family, partial, alpha, o } => {
            let c = io::load_map(&mono)?;
            let f = io::load_map(&family)?;
            let y_c = io::load_map(&partial)?;
            let u = build_universe(&NerveAdjunction::new(f.base(), guard), alpha)?;
            io::emit(o.as_deref(), &io::map_file(&realign(&c, &f, &y_c, &u)?))?;
        }
        Cmd::Basechange { functor, op, presheaf, o } => {
            let bc = BaseChange::new(&io::load_functor(&functor)?, guard)?;
            let x = io::load_presheaf(&presheaf)?;
            let out = match op {
                BaseOp::Restrict => bc.restrict(&x)?,
                BaseOp::Lan => bc.lan(&x)?.presheaf,
                BaseOp::Ran => bc.ran(&x)?.presheaf,
            };
            io::emit(o.as_deref(), &io::presheaf_file(&out))?;
        }
        Cmd::Check { what: CheckCmd::Basechange { functor, alpha } } => {
            let f = io::load_functor(&functor)?;
            let bc = BaseChange::new(&f, guard)?;
            let squares = (0..f.source().num_morphisms()).all(|h| bc.slice_square_commutes(h));
            return Ok(report(&[
                ("slice_squares_commute", squares),
                ("sliced_final", bc.sliced_functors_final()),
                ("universe_square_pullback", bc.check_universe_basechange(alpha)?),
                ("lifting", bc.check_lifting(alpha)?),
            ]));
        }
        Cmd::Check { what: CheckCmd::Category { file } } => {
            let c = io::load_category(&file)?;
            println!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms());
        }
        Cmd::Fib { kind, what: FibCmd::Universal { base, alpha, o } } => {
            let u = build_universe(&NerveAdjunction::new(&io::load_category(&base)?, guard), alpha)?;
            let uf = universal_fibration(builtin_fib(kind).as_ref(), &u)?;
            io::emit(o.as_deref(), &io::map_file(uf.proj()))?;
            eprintln!("U sizes {:?}, V sizes {:?}", uf.ucal().sizes(), u.v().sizes());
            return Ok(report(&[("diagonal_section", uf.diagonal_is_section())]));
        }
        Cmd::Fib { kind, what: FibCmd::Transfer { functor, family, o } } => {
            let bc = BaseChange::new(&io::load_functor(&functor)?, guard)?;
            let b = io::load_map(&family)?;
            let tf = TransferredFib::new(bc, builtin_fib(kind));
            let fb = hscat_core::FibAssignment::assign(&tf, &b)?;
            io::emit(o.as_deref(), &io::map_file(&fb))?;
            let here = sections(&fb)?.len();
            let there = sections(&tf.restricted(&b)?)?.len();
            eprintln!("{here} structures on the family, {there} on its restriction");
            return Ok(report(&[("section_counts_match", here == there)]));
        }
        Cmd::Suite { name, corpus, alpha, seed, json } => {
            let corpus = match corpus {
                Some(dir) => Corpus::load(&dir)?,
                None => Corpus::builtin(),
            };
            let cfg = SuiteConfig { alphas: alpha, guard, seed };
            let r = run_suite(&name, &corpus, &cfg)?;
            for i in &r.instances {
                if i.verdict != hscat::suite::Verdict::Pass {
                    println!("{:?} {} {}", i.verdict, i.id, i.detail.as_deref().unwrap_or(""));
                }
            }
            println!("{}: {} passed, {} failed, {} skipped", r.suite, r.passed, r.failed, r.skipped);
            if let Some(p) = json {
                io::write_json(&p, &r)?;
            }
            return Ok(r.ok());
        }
        Cmd::Dot { kind, file, name } => {
            let text = match kind {
                DotKind::Category => dot::category_dot(&io::load_category(&file)?, &name),
                DotKind::Fibration => {
                    let p = io::load_functor(&file)?;
                    DiscreteFibration::new(p.clone())?;
                    dot::fibration_dot(&p, &name)
                }
                DotKind::Presheaf => dot::presheaf_dot(&io::load_presheaf(&file)?, &name),
            };
            print!("{text}");
        }
        Cmd::Corpus { what: CorpusCmd::Generate { dir } } => {
            if dir.join("categories").exists() {
                bail!(InputError(format!("{} already holds a corpus", dir.display())));
            }
            Corpus::builtin().write(Path::new(&dir))?;
        }
    }
    Ok(true)
}

fn is_usage(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.is::<InputError>()
            || c.is::<UnknownSuite>()
            || c.is::<std::io::Error>()
            || matches!(c.downcast_ref::<Error>(), Some(Error::Parse(_) | Error::InvalidAlpha(_)))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
