//! Command-line workbench tying construction, decomposition, analysis and
//! simulation into reproducible file-based pipelines.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

mod manifest;

use circdec::alist::{read_alist, write_alist};
use circdec::circulant::{BlockCirculantArray, Circulant, MaskPattern, Orientation};
use circdec::cyclic::{self, CyclicCodeSpec};
use circdec::decode::{self, DecoderSpec, StopRule};
use circdec::geometry::{self, CpmArray, GeometrySpec};
use circdec::gf::BinaryMatrix;
use circdec::tanner::{self, Girth, TsFilter};
use clap::{Parser, Subcommand, ValueEnum};
use manifest::{Kind, Manifest};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "circdec",
    version,
    about = "Cyclic and quasi-cyclic LDPC code workbench: finite-geometry and finite-field \
             constructions, circulant decomposition, trapping sets and AWGN simulation"
)]
struct Cli {
    /// Cap on worker threads (default: CIRCDEC_THREADS env var, else all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Eg,
    Pg,
    Bch,
    RsDispersion,
    LsDispersion,
    Manual,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Rows,
    Columns,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RankMethod {
    Gauss,
    Ft,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    All,
    Elementary,
    Codeword,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecoderArg {
    Spa,
    MinSum,
    Osmlgd,
}

#[derive(Subcommand)]
enum Command {
    /// Build a parity-check matrix (optionally decomposed/masked/split) and
    /// write it as alist
    Construct {
        /// Construction manifest file; flags below override its fields
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Field size q (geometries, dispersions)
        #[arg(long)]
        q: Option<u64>,
        /// Geometry dimension m (EG)
        #[arg(long)]
        m: Option<u32>,
        /// Cyclic line class index (EG)
        #[arg(long)]
        class: Option<usize>,
        #[arg(long, value_enum)]
        orientation: Option<OrientationArg>,
        /// Code length (bch)
        #[arg(long)]
        n: Option<usize>,
        /// Base field characteristic (bch; default 2)
        #[arg(long)]
        p: Option<u64>,
        /// Base field degree (bch; default 1)
        #[arg(long)]
        s: Option<u32>,
        /// Extension degree over the base field (bch; default: order of q mod n)
        #[arg(long)]
        mext: Option<u32>,
        /// Generator roots as omega-exponents, comma separated (bch);
        /// conjugate closure is applied
        #[arg(long, value_delimiter = ',')]
        roots: Option<Vec<u64>>,
        /// Nonzero eta as an alpha-exponent (ls-dispersion; default 0)
        #[arg(long)]
        eta: Option<u64>,
        /// Decompose into a c x c block-circulant array
        #[arg(long)]
        c: Option<usize>,
        /// CPM block count factor b (with --l, q - 1 = b*l)
        #[arg(long)]
        b: Option<usize>,
        /// CPM block size l (with --b)
        #[arg(long)]
        l: Option<usize>,
        /// Block-split factor e (CPM arrays; e divides q)
        #[arg(long)]
        e: Option<usize>,
        /// Sections to mask (type-3), comma separated
        #[arg(long, value_delimiter = ',')]
        mask_sections: Option<Vec<usize>>,
        /// Input alist (kind manual)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output alist path
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the normalized manifest here
        #[arg(long)]
        save_manifest: Option<PathBuf>,
    },
    /// Decompose a circulant alist into sections (--c) or a CPM grid (--b/--l)
    Decompose {
        #[arg(long)]
        r#in: PathBuf,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        /// Prefix for emitted files
        #[arg(long)]
        out_prefix: PathBuf,
        /// Also write one descendant circulant alist per nonzero section
        #[arg(long, default_value_t = false)]
        section_alists: bool,
    },
    /// Mask sections of a circulant (--c/--sections) or a CPM grid (--grid/--z)
    Mask {
        /// Circulant alist input (type-3 masking)
        #[arg(long)]
        r#in: Option<PathBuf>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        sections: Option<Vec<usize>>,
        /// CPM grid text input (masking-matrix product)
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Masking matrix Z as alist
        #[arg(long)]
        z: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Column/row block splitting of a CPM grid
    Split {
        /// CPM grid text input
        #[arg(long)]
        r#in: PathBuf,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive trapping-set enumeration to CSV
    Trapset {
        #[arg(long)]
        r#in: PathBuf,
        #[arg(long)]
        kappa_max: usize,
        #[arg(long)]
        tau_max: Option<usize>,
        #[arg(long, value_enum, default_value = "all")]
        filter: FilterArg,
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of an alist matrix by Gaussian elimination or Fourier transform
    Rank {
        #[arg(long)]
        r#in: PathBuf,
        #[arg(long, value_enum, default_value = "gauss")]
        method: RankMethod,
    },
    /// Predicted vs oracle descendant roots for a cyclic-code manifest
    Roots {
        /// Cyclic-code manifest (kind = cyclic-code)
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        c: usize,
        /// Section index; all sections when omitted
        #[arg(long)]
        section: Option<usize>,
    },
    /// Monte Carlo BER/BLER simulation over BPSK/AWGN
    Simulate {
        #[arg(long)]
        r#in: PathBuf,
        #[arg(long, value_enum, default_value = "spa")]
        decoder: DecoderArg,
        /// Inclusive SNR range start:step:end in dB (or a single value)
        #[arg(long, default_value = "3:1:6")]
        snr: String,
        #[arg(long, default_value_t = 10_000)]
        max_frames: usize,
        #[arg(long, default_value_t = usize::MAX)]
        min_frame_errors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        /// Min-sum scale factor
        #[arg(long, default_value_t = decode::DEFAULT_MIN_SUM_SCALE)]
        scale: f64,
        /// Exhaustively decode all error patterns up to this weight with
        /// OSMLGD instead of simulating
        #[arg(long)]
        exhaustive_weight: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    // die quietly when stdout is closed early (e.g. piped into head)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("CIRCDEC_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .ok();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn load_matrix(path: &Path) -> Result<BinaryMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(read_alist(&text)?)
}

fn save(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// Checks that every row of a square matrix is the right cyclic-shift of the
/// row above and returns the generator.
fn circulant_from_matrix(m: &BinaryMatrix) -> Result<Circulant<u8>, CliError> {
    let n = m.cols();
    if m.rows() != n {
        return Err(CliError(format!(
            "matrix is {}x{}, a circulant must be square",
            m.rows(),
            n
        )));
    }
    let gen: Vec<u8> = (0..n).map(|j| m.get(0, j) as u8).collect();
    for i in 1..n {
        for j in 0..n {
            if m.get(i, j) as u8 != gen[(j + n - i % n) % n] {
                return Err(CliError(format!(
                    "row {i} is not the {i}-th cyclic shift of row 0 (col {j}); not a circulant"
                )));
            }
        }
    }
    Ok(Circulant::new(gen))
}

fn print_matrix_report(label: &str, m: &BinaryMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let row_weights: Vec<usize> = (0..rows).map(|r| m.row_weight(r)).collect();
    let col_weights: Vec<usize> = (0..cols).map(|c| m.col_weight(c)).collect();
    let rank = m.rank();
    let rc = tanner::rc_check(m);
    let girth = match tanner::girth(m) {
        Girth::Cycle(g) => g.to_string(),
        Girth::Acyclic => "none (acyclic)".to_string(),
    };
    println!("{label}: {rows} x {cols}");
    println!("rank = {rank}  (null space dimension {})", cols - rank);
    println!(
        "row weights = {}  column weights = {}",
        weight_summary(&row_weights),
        weight_summary(&col_weights)
    );
    println!(
        "rc_constraint = {}  girth = {girth}",
        if rc.ok { "ok" } else { "violated" }
    );
    if let Some((r1, r2, pos)) = rc.witness {
        let shown: Vec<usize> = pos.iter().take(8).copied().collect();
        let more = pos.len().saturating_sub(shown.len());
        println!(
            "rc_witness: rows {r1} and {r2} share {} positions {shown:?}{}",
            pos.len(),
            if more > 0 { " ..." } else { "" }
        );
    }
}

fn weight_summary(w: &[usize]) -> String {
    let mut distinct: Vec<usize> = w.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() == 1 {
        format!("{}", distinct[0])
    } else if distinct.len() <= 4 {
        format!("{distinct:?}")
    } else {
        format!(
            "{}..{} ({} distinct)",
            distinct[0],
            distinct[distinct.len() - 1],
            distinct.len()
        )
    }
}

fn multiplicative_order(base: u64, modulus: u64) -> Option<u32> {
    if modulus <= 1 || base % modulus == 0 {
        return None;
    }
    let mut pow = base % modulus;
    let mut ord = 1u32;
    while pow != 1 {
        pow = pow * base % modulus;
        ord += 1;
        if ord > 64 {
            return None;
        }
    }
    Some(ord)
}

/// Builds the base matrix of a manifest, before any decomposition step.
fn build_base(man: &mut Manifest) -> Result<BinaryMatrix, CliError> {
    let kind = man
        .kind
        .clone()
        .ok_or_else(|| CliError("manifest needs a kind".into()))?;
    match kind {
        Kind::Eg => {
            let q = man.q.ok_or_else(|| CliError("eg needs q".into()))?;
            let m = *man.m.get_or_insert(2);
            let class = *man.class.get_or_insert(0);
            let geom = GeometrySpec::eg(m, q)?;
            let orbits = geom.eg_lines()?;
            let orbit = orbits
                .get(class)
                .ok_or_else(|| CliError(format!("class {class} of {}", orbits.len())))?;
            let orientation = match man
                .orientation
                .get_or_insert_with(|| if m == 2 { "rows".into() } else { "columns".into() })
                .as_str()
            {
                "rows" => Orientation::Rows,
                "columns" => Orientation::Columns,
                other => return Err(CliError(format!("bad orientation {other:?}"))),
            };
            let w = geom.eg_circulant(orbit, orientation)?;
            Ok(w.to_binary_matrix(None)?)
        }
        Kind::Pg => {
            let q = man.q.ok_or_else(|| CliError("pg needs q".into()))?;
            let geom = GeometrySpec::pg(q)?;
            Ok(geom.pg_circulant()?.to_binary_matrix(None)?)
        }
        Kind::Bch => {
            let n = man.n.ok_or_else(|| CliError("bch needs n".into()))?;
            let p = *man.p.get_or_insert(2);
            let s = *man.s.get_or_insert(1);
            let q = p.pow(s);
            let mext = match man.mext {
                Some(m) => m,
                None => {
                    let m = multiplicative_order(q, n as u64).ok_or_else(|| {
                        CliError(format!("no extension of GF({q}) contains order-{n} roots"))
                    })?;
                    man.mext = Some(m);
                    m
                }
            };
            let seeds = man
                .roots
                .clone()
                .ok_or_else(|| CliError("bch needs roots".into()))?;
            let closed = cyclic::conjugate_closure(n as u64, q, &seeds);
            man.roots = Some(closed.clone());
            let ext = std::sync::Arc::new(circdec::gf::FieldSpec::build(p, s * mext, None)?);
            let code = CyclicCodeSpec::from_roots(ext, q, n, &closed)?;
            Ok(code.parity_circulant()?.to_binary_matrix(None)?)
        }
        Kind::RsDispersion => {
            let q = man
                .q
                .ok_or_else(|| CliError("rs-dispersion needs q".into()))?;
            let (p, s) = prime_power(q)?;
            let f = std::sync::Arc::new(circdec::gf::FieldSpec::build(p, s, None)?);
            let base = geometry::rs_base_matrix(f);
            Ok(base.cpm_dispersion().to_binary_matrix(None)?)
        }
        Kind::LsDispersion => {
            let q = man
                .q
                .ok_or_else(|| CliError("ls-dispersion needs q".into()))?;
            let eta_exp = *man.eta.get_or_insert(0);
            let (p, s) = prime_power(q)?;
            let f = std::sync::Arc::new(circdec::gf::FieldSpec::build(p, s, None)?);
            let base = geometry::latin_square_base(f.clone(), f.el(eta_exp))?;
            Ok(base.cpm_dispersion().to_binary_matrix(None)?)
        }
        Kind::Manual => {
            let input = man
                .input
                .clone()
                .ok_or_else(|| CliError("manual needs input".into()))?;
            load_matrix(Path::new(&input))
        }
    }
}

fn prime_power(q: u64) -> Result<(u64, u32), CliError> {
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut s = 0u32;
    let mut x = q;
    while x > 1 && x % p == 0 {
        x /= p;
        s += 1;
    }
    if x != 1 || s == 0 {
        return Err(CliError(format!("{q} is not a prime power")));
    }
    Ok((p, s))
}

/// Applies the manifest's decomposition pipeline to the base matrix.
fn apply_pipeline(man: &Manifest, base: BinaryMatrix) -> Result<BinaryMatrix, CliError> {
    if let Some(c) = man.c {
        let circ = circulant_from_matrix(&base)?;
        let arr = BlockCirculantArray::decompose(&circ, c)?;
        if let Some(mask) = &man.mask_sections {
            let masked = arr.mask_sections(&MaskPattern::Sections(mask.clone()))?;
            // type-3 descendant: the recomposed masked circulant
            return Ok(masked.recompose().to_binary_matrix(None)?);
        }
        return Ok(arr.materialize(None)?);
    }
    if let (Some(b), Some(l)) = (man.b, man.l) {
        let q = man
            .q
            .ok_or_else(|| CliError("cpm decomposition needs q".into()))?;
        let circ = circulant_from_matrix(&base)?;
        let mut arr = geometry::cpm_decompose(&circ, q, b, l)?;
        if let Some(e) = man.e {
            arr = geometry::block_split(&arr, e, q)?;
        }
        return Ok(arr.to_binary_matrix(None)?);
    }
    Ok(base)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Construct {
            manifest,
            kind,
            q,
            m,
            class,
            orientation,
            n,
            p,
            s,
            mext,
            roots,
            eta,
            c,
            b,
            l,
            e,
            mask_sections,
            input,
            out,
            save_manifest,
        } => {
            let mut man = match manifest {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
                    Manifest::parse(&text).map_err(CliError)?
                }
                None => Manifest::default(),
            };
            if let Some(k) = kind {
                man.kind = Some(match k {
                    KindArg::Eg => Kind::Eg,
                    KindArg::Pg => Kind::Pg,
                    KindArg::Bch => Kind::Bch,
                    KindArg::RsDispersion => Kind::RsDispersion,
                    KindArg::LsDispersion => Kind::LsDispersion,
                    KindArg::Manual => Kind::Manual,
                });
            }
            man.q = q.or(man.q);
            man.m = m.or(man.m);
            man.class = class.or(man.class);
            if let Some(o) = orientation {
                man.orientation = Some(
                    match o {
                        OrientationArg::Rows => "rows",
                        OrientationArg::Columns => "columns",
                    }
                    .to_string(),
                );
            }
            man.n = n.or(man.n);
            man.p = p.or(man.p);
            man.s = s.or(man.s);
            man.mext = mext.or(man.mext);
            man.roots = roots.or(man.roots);
            man.eta = eta.or(man.eta);
            man.c = c.or(man.c);
            man.b = b.or(man.b);
            man.l = l.or(man.l);
            man.e = e.or(man.e);
            man.mask_sections = mask_sections.or(man.mask_sections);
            man.input = input.map(|p| p.display().to_string()).or(man.input);

            let base = build_base(&mut man)?;
            let matrix = apply_pipeline(&man, base)?;
            print_matrix_report("constructed", &matrix);
            print!("{man}");
            if let Some(out) = out {
                save(&out, &write_alist(&matrix))?;
                println!("wrote {}", out.display());
            }
            if let Some(path) = save_manifest {
                save(&path, &man.to_string())?;
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Decompose {
            r#in,
            c,
            q,
            b,
            l,
            out_prefix,
            section_alists,
        } => {
            let matrix = load_matrix(&r#in)?;
            let circ = circulant_from_matrix(&matrix)?;
            let prefix = out_prefix.display().to_string();
            match (c, b, l) {
                (Some(c), None, None) => {
                    let arr = BlockCirculantArray::decompose(&circ, c)?;
                    println!(
                        "decomposed {} x {} circulant into {c} x {c} blocks of size {}",
                        matrix.rows(),
                        matrix.cols(),
                        arr.l()
                    );
                    let sections_path = PathBuf::from(format!("{prefix}.sections.txt"));
                    save(&sections_path, &arr.sections_to_text())?;
                    println!("wrote {}", sections_path.display());
                    let qc_path = PathBuf::from(format!("{prefix}.qc.alist"));
                    save(&qc_path, &write_alist(&arr.materialize(None)?))?;
                    println!("wrote {}", qc_path.display());
                    if section_alists {
                        let mut written = 0usize;
                        for i in 0..c {
                            let section = arr.section(i).to_vec();
                            if section.iter().all(|&x| x == 0) {
                                continue;
                            }
                            let desc = Circulant::new(section).to_binary_matrix(None)?;
                            let path = PathBuf::from(format!("{prefix}.section{i:03}.alist"));
                            save(&path, &write_alist(&desc))?;
                            written += 1;
                        }
                        println!("wrote {written} descendant circulant alists");
                    }
                }
                (None, Some(b), Some(l)) => {
                    let q = q.ok_or_else(|| CliError("cpm decomposition needs --q".into()))?;
                    let arr = geometry::cpm_decompose(&circ, q, b, l)?;
                    let census = arr.row_census();
                    println!(
                        "cpm decomposition: {} x {} blocks of size {l}, {} CPMs per row block",
                        arr.block_rows(),
                        arr.block_cols(),
                        weight_summary(&census)
                    );
                    let grid_path = PathBuf::from(format!("{prefix}.grid.txt"));
                    save(&grid_path, &arr.to_grid_text())?;
                    println!("wrote {}", grid_path.display());
                    let alist_path = PathBuf::from(format!("{prefix}.cpm.alist"));
                    save(&alist_path, &write_alist(&arr.to_binary_matrix(None)?))?;
                    println!("wrote {}", alist_path.display());
                }
                _ => {
                    return Err(CliError(
                        "give either --c, or --b and --l (with --q)".into(),
                    ))
                }
            }
            Ok(())
        }
        Command::Mask {
            r#in,
            c,
            sections,
            grid,
            z,
            out,
        } => match (r#in, grid) {
            (Some(path), None) => {
                let c = c.ok_or_else(|| CliError("type-3 masking needs --c".into()))?;
                let sections =
                    sections.ok_or_else(|| CliError("type-3 masking needs --sections".into()))?;
                let circ = circulant_from_matrix(&load_matrix(&path)?)?;
                let arr = BlockCirculantArray::decompose(&circ, c)?;
                let masked = arr.mask_sections(&MaskPattern::Sections(sections))?;
                let recomposed = masked.recompose();
                let dense = recomposed.to_binary_matrix(None)?;
                print_matrix_report("masked circulant", &dense);
                save(&out, &write_alist(&dense))?;
                println!("wrote {}", out.display());
                Ok(())
            }
            (None, Some(grid_path)) => {
                let z_path = z.ok_or_else(|| CliError("grid masking needs --z".into()))?;
                let text = std::fs::read_to_string(&grid_path)
                    .map_err(|e| CliError(format!("{}: {e}", grid_path.display())))?;
                let arr = CpmArray::from_grid_text(&text)?;
                let zm = load_matrix(&z_path)?;
                let masked = geometry::mask_product(&zm, &arr)?;
                save(&out, &masked.to_grid_text())?;
                println!(
                    "masked {} x {} CPM array; per-row CPMs {}",
                    masked.block_rows(),
                    masked.block_cols(),
                    weight_summary(&masked.row_census())
                );
                println!("wrote {}", out.display());
                Ok(())
            }
            _ => Err(CliError("give exactly one of --in or --grid".into())),
        },
        Command::Split { r#in, e, q, out } => {
            let text = std::fs::read_to_string(&r#in)
                .map_err(|err| CliError(format!("{}: {err}", r#in.display())))?;
            let arr = CpmArray::from_grid_text(&text)?;
            let split = geometry::block_split(&arr, e, q)?;
            println!(
                "split {} x {} -> {} x {} blocks; per-row CPMs {}",
                arr.block_rows(),
                arr.block_cols(),
                split.block_rows(),
                split.block_cols(),
                weight_summary(&split.row_census())
            );
            save(&out, &split.to_grid_text())?;
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Trapset {
            r#in,
            kappa_max,
            tau_max,
            filter,
            budget,
            out,
        } => {
            let matrix = load_matrix(&r#in)?;
            let filter = match filter {
                FilterArg::All => TsFilter::All,
                FilterArg::Elementary => TsFilter::Elementary,
                FilterArg::Codeword => TsFilter::Codeword,
            };
            let records =
                tanner::enumerate_trapping_sets(&matrix, kappa_max, tau_max, filter, budget)?;
            println!("{} trapping sets recorded", records.len());
            for kappa in 1..=kappa_max {
                let taus: std::collections::BTreeSet<usize> = records
                    .iter()
                    .filter(|r| r.kappa == kappa)
                    .map(|r| r.tau)
                    .collect();
                if !taus.is_empty() {
                    println!("kappa = {kappa}: tau in {taus:?}");
                }
            }
            let csv = tanner::records_to_csv(&records);
            match out {
                Some(path) => {
                    save(&path, &csv)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Rank { r#in, method } => {
            let matrix = load_matrix(&r#in)?;
            let rank = match method {
                RankMethod::Gauss => matrix.rank(),
                RankMethod::Ft => {
                    let circ = circulant_from_matrix(&matrix)?;
                    cyclic::ft_rank(&circ)?
                }
            };
            println!("rank = {rank}");
            Ok(())
        }
        Command::Roots {
            manifest,
            c,
            section,
        } => {
            let text = std::fs::read_to_string(&manifest)
                .map_err(|e| CliError(format!("{}: {e}", manifest.display())))?;
            let code = CyclicCodeSpec::from_manifest(&text)?;
            let rd = code.root_data()?;
            let part = code.equal_classes(c)?;
            let ht = code.parity_check_vector_binary()?;
            let l = code.n() / c;
            let sections: Vec<usize> = match section {
                Some(j) => vec![j],
                None => (0..c).collect(),
            };
            let mut all_match = true;
            for j in sections {
                let predicted = code.type1_descendant_roots(&rd, &part, j)?;
                let section_vec = circdec::circulant::cyclic_section(&ht, c, j)?;
                let oracle: std::collections::BTreeSet<u64> =
                    if section_vec.iter().all(|&x| x == 0) {
                        std::collections::BTreeSet::new()
                    } else {
                        let w = Circulant::new(section_vec);
                        let g = cyclic::generator_from_rows(
                            code.ext(),
                            l,
                            &cyclic::circulant_row_polys(&w),
                        )?;
                        g.roots_among_powers(code.ext(), code.descendant_omega(c), l as u64)
                            .into_iter()
                            .collect()
                    };
                let verdict = if predicted.roots == oracle {
                    "MATCH"
                } else {
                    all_match = false;
                    "MISMATCH"
                };
                let pred: Vec<u64> = predicted.roots.iter().copied().collect();
                let orac: Vec<u64> = oracle.iter().copied().collect();
                println!(
                    "section {j}: predicted {pred:?} oracle {orac:?} {verdict}{}",
                    if predicted.whole_space {
                        " (zero section: whole-space descendant)"
                    } else {
                        ""
                    }
                );
            }
            if all_match {
                Ok(())
            } else {
                Err(CliError("predicted and oracle roots differ".into()))
            }
        }
        Command::Simulate {
            r#in,
            decoder,
            snr,
            max_frames,
            min_frame_errors,
            seed,
            max_iter,
            scale,
            exhaustive_weight,
            out,
        } => {
            let matrix = load_matrix(&r#in)?;
            if let Some(weight) = exhaustive_weight {
                let mut total_fails = 0usize;
                let mut total_patterns = 0u64;
                for w in 1..=weight {
                    let (fails, patterns) = decode::osmlgd_exhaustive(&matrix, w)?;
                    total_fails += fails;
                    total_patterns += patterns;
                }
                println!("{total_fails} failures / {total_patterns} patterns");
                return if total_fails == 0 {
                    Ok(())
                } else {
                    Err(CliError(format!(
                        "{total_fails} error patterns not corrected"
                    )))
                };
            }
            let snrs = parse_snr_range(&snr)?;
            let spec = match decoder {
                DecoderArg::Spa => DecoderSpec::Spa { max_iter },
                DecoderArg::MinSum => DecoderSpec::MinSum { max_iter, scale },
                DecoderArg::Osmlgd => DecoderSpec::Osmlgd,
            };
            let stop = StopRule {
                max_frames,
                min_frame_errors,
            };
            let report = decode::monte_carlo(&matrix, spec, &snrs, stop, seed)?;
            let csv = report.to_csv();
            match out {
                Some(path) => {
                    save(&path, &csv)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{csv}"),
            }
            Ok(())
        }
    }
}

/// Inclusive start:step:end range, or a single SNR value.
fn parse_snr_range(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let parse = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| CliError(format!("bad SNR value {t:?}")))
    };
    match parts.as_slice() {
        [single] => Ok(vec![parse(single)?]),
        [start, step, end] => {
            let (start, step, end) = (parse(start)?, parse(step)?, parse(end)?);
            if step <= 0.0 {
                return Err(CliError("SNR step must be positive".into()));
            }
            let mut out = Vec::new();
            let mut x = start;
            while x <= end + 1e-9 {
                out.push(x);
                x += step;
            }
            Ok(out)
        }
        _ => Err(CliError(format!(
            "bad SNR range {s:?}; use start:step:end or a single value"
        ))),
    }
}
