use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use hyperff_core::decompose::{self, GraphStatsConfig};
use hyperff_core::fit::{self, FitTable};
use hyperff_core::generator::{self, HyperFFParams};
use hyperff_core::ingest::{self, Format, Ingested, TripleFileSet};
use hyperff_core::patterns::{self, PatternError};
use hyperff_core::spectral::{self, SpectralConfig};
use hyperff_core::temporal::{self, SeriesSlope};
use hyperff_core::{EmpiricalDistribution, TimestampedHyperedgeSequence};

use crate::args::*;
use crate::error::CliError;
use crate::output::{default_out_dir, num, opt, sidecar_manifest, Outputs, RunRecord};

fn load(input: &InputArgs) -> Result<Ingested, CliError> {
    let ingested = match Format::from(input.format) {
        Format::Native => ingest::read_native(&input.input)?,
        Format::Triple => ingest::read_triple(&TripleFileSet::from_prefix(&input.input))?,
    };
    Ok(ingested)
}

fn note_ingest(record: &mut RunRecord, ing: &Ingested) {
    record.note("num_records", ing.sequence.len());
    record.note("num_distinct_nodes", ing.labels.len());
    record.note("collapsed_duplicate_members", ing.collapsed_duplicates);
}

fn write_sequence(outputs: &mut Outputs, path: &Path, seq: &TimestampedHyperedgeSequence) -> Result<(), CliError> {
    outputs.write_with(path, |w| ingest::write_native_to(seq, &mut *w))
}

fn write_distribution(outputs: &mut Outputs, path: &Path, dist: &EmpiricalDistribution) -> Result<(), CliError> {
    outputs.write_with(path, |w| {
        writeln!(w, "value,count")?;
        for (v, c) in dist.iter() {
            writeln!(w, "{},{c}", num(v))?;
        }
        Ok(())
    })
}

fn write_fit_table(outputs: &mut Outputs, path: &Path, table: &FitTable) -> Result<Vec<String>, CliError> {
    let mut problems = Vec::new();
    outputs.write_with(path, |w| {
        writeln!(w, "family,param1,param2,xmin,loglik,llr_vs_exponential,llr_normalized,p_value")?;
        for row in &table.rows {
            let (p1, p2, ll) = match &row.fit {
                Ok(r) => {
                    let (a, b) = r.family.params().values();
                    (num(a), opt(b), num(r.log_likelihood))
                }
                Err(e) => {
                    problems.push(format!("{}: {e}", row.kind));
                    Default::default()
                }
            };
            let (llr, norm, p) = match &row.vs_exponential {
                Some(Ok(c)) => (num(c.ratio), num(c.ratio_normalized), num(c.p_value)),
                Some(Err(e)) => {
                    if row.fit.is_ok() {
                        problems.push(format!("{} vs exponential: {e}", row.kind));
                    }
                    Default::default()
                }
                None => Default::default(),
            };
            writeln!(w, "{},{p1},{p2},{},{ll},{llr},{norm},{p}", row.kind, num(table.xmin))?;
        }
        Ok(())
    })?;
    Ok(problems)
}

fn out_dir(arg: &Option<PathBuf>) -> PathBuf {
    arg.clone().unwrap_or_else(default_out_dir)
}

fn out_file(arg: &Option<PathBuf>, default_name: &str) -> PathBuf {
    arg.clone().unwrap_or_else(|| default_out_dir().join(default_name))
}

pub fn generate(args: &GenerateArgs) -> Result<(), CliError> {
    let mut record = RunRecord::new("generate", args, Some(args.seed));
    let params = HyperFFParams::new(args.burn, args.expand, args.nodes, args.seed);
    params.validate()?;
    let seq = generator::hyperff(&params)?;
    record.note("num_records", seq.len());
    let path = out_file(&args.out, "hyperff.txt");
    let mut outputs = Outputs::new();
    write_sequence(&mut outputs, &path, &seq)?;
    record.write(&mut outputs, &sidecar_manifest(&path))?;
    outputs.commit();
    Ok(())
}

pub fn nullmodel(args: &NullModelArgs) -> Result<(), CliError> {
    let mut record = RunRecord::new("nullmodel", args, Some(args.seed)).input(&args.input.input);
    let ing = load(&args.input)?;
    note_ingest(&mut record, &ing);
    let out = generator::null_model(&ing.sequence, args.seed)?;
    let path = out_file(&args.out, "null_model.txt");
    let mut outputs = Outputs::new();
    write_sequence(&mut outputs, &path, &out)?;
    record.write(&mut outputs, &sidecar_manifest(&path))?;
    outputs.commit();
    Ok(())
}

pub fn analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let mut record = RunRecord::new("analyze", args, Some(args.seed)).input(&args.input.input);
    let ing = load(&args.input)?;
    note_ingest(&mut record, &ing);
    let g = ing.sequence.build();
    let dir = out_dir(&args.out_dir);
    let mut outputs = Outputs::new();
    outputs.ensure_dir(&dir)?;
    let mut fit_problems = Vec::new();
    let mut maybe_fit = |outputs: &mut Outputs, name: &str, dist: &EmpiricalDistribution, discrete: bool| {
        if !args.fit || dist.is_empty() {
            return Ok::<(), CliError>(());
        }
        let table = fit::fit_table(dist, discrete, None)?;
        for p in write_fit_table(outputs, &dir.join(format!("{name}_fit.csv")), &table)? {
            fit_problems.push(format!("{name}: {p}"));
        }
        Ok(())
    };

    for metric in dedup_metrics(&args.metrics) {
        match metric {
            Metric::Degree => {
                let h = patterns::degree_distribution(&g);
                record.note("zero_degree_nodes", h.zero_degree);
                write_distribution(&mut outputs, &dir.join("degree.csv"), &h.distribution)?;
                maybe_fit(&mut outputs, "degree", &h.distribution, true)?;
            }
            Metric::Size => {
                let d = patterns::edge_size_distribution(&g);
                write_distribution(&mut outputs, &dir.join("size.csv"), &d)?;
                maybe_fit(&mut outputs, "size", &d, true)?;
            }
            Metric::Intersection => {
                let s = patterns::intersection_stats(&g);
                write_distribution(&mut outputs, &dir.join("intersection.csv"), &s.size_histogram)?;
                let doi = patterns::density_of_interactions(&s).ok();
                outputs.write_with(&dir.join("intersection_stats.csv"), |w| {
                    writeln!(w, "intersecting_pairs,{}", s.intersecting_pairs)?;
                    writeln!(w, "possible_pairs,{}", s.possible_pairs)?;
                    writeln!(w, "density_of_interactions,{}", opt(doi))
                })?;
                maybe_fit(&mut outputs, "intersection", &s.size_histogram, true)?;
            }
            Metric::Svd => {
                let m = spectral::incidence_matrix(&g);
                let cfg = SpectralConfig { seed: args.seed, ..Default::default() };
                let spec = spectral::singular_values_with(&m, args.spectral.top_k, args.spectral.tol, &cfg)?;
                record.note("svd_method", spec.method.as_str());
                outputs.write_with(&dir.join("svd.csv"), |w| {
                    writeln!(w, "rank,sigma")?;
                    for (i, s) in spec.values.iter().enumerate() {
                        writeln!(w, "{},{}", i + 1, num(*s))?;
                    }
                    Ok(())
                })?;
                let positive: Vec<f64> = spec.values.iter().copied().filter(|&s| s > 0.0).collect();
                let dist = EmpiricalDistribution::from_reals(positive).expect("positive finite values");
                maybe_fit(&mut outputs, "svd", &dist, false)?;
            }
            Metric::Diameter => {
                let cfg = args.diameter.config(args.seed);
                let (value, method, sources) = match patterns::effective_diameter(&g, &cfg) {
                    Ok(d) => (Some(d.value), d.method.as_str(), d.sources),
                    Err(PatternError::UndefinedDiameter) => (None, "exact", 0),
                    Err(e) => return Err(e.into()),
                };
                outputs.write_with(&dir.join("diameter.csv"), |w| {
                    writeln!(w, "effective_diameter,quantile,method,sources")?;
                    writeln!(w, "{},{},{method},{sources}", opt(value), num(cfg.quantile))
                })?;
            }
        }
    }
    if !fit_problems.is_empty() {
        record.note("fit_problems", &fit_problems);
    }
    record.write(&mut outputs, &dir.join("manifest.json"))?;
    outputs.commit();
    Ok(())
}

fn dedup_metrics(metrics: &[Metric]) -> Vec<Metric> {
    let mut out: Vec<Metric> = Vec::new();
    for &m in metrics {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// Reads `value,count` rows (histogram) or `rank,sigma` rows (one sample per
/// row). A header line is optional.
pub fn read_fit_input(path: &Path, discrete: bool) -> Result<EmpiricalDistribution, CliError> {
    let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut samples_mode = false;
    let mut values: Vec<(f64, u64)> = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(CliError::parse(format!("{}:{}: expected two columns", path.display(), i + 1)));
        }
        if i == 0 && fields[0].parse::<f64>().is_err() {
            samples_mode = fields == ["rank", "sigma"];
            if !samples_mode && fields != ["value", "count"] {
                return Err(CliError::parse(format!(
                    "{}:1: header must be `value,count` or `rank,sigma`",
                    path.display()
                )));
            }
            continue;
        }
        let bad = |what: &str| CliError::parse(format!("{}:{}: {what}", path.display(), i + 1));
        if samples_mode {
            let v: f64 = fields[1].parse().map_err(|_| bad("sigma is not a number"))?;
            values.push((v, 1));
        } else {
            let v: f64 = fields[0].parse().map_err(|_| bad("value is not a number"))?;
            let c: u64 = fields[1].parse().map_err(|_| bad("count is not a nonnegative integer"))?;
            values.push((v, c));
        }
    }
    // zero values (e.g. zero singular values) carry no tail information
    values.retain(|&(v, c)| v > 0.0 && c > 0);
    if let Some(&(v, _)) = values.iter().find(|(v, _)| !v.is_finite()) {
        return Err(CliError::parse(format!("{}: non-finite value {v}", path.display())));
    }
    if discrete {
        if let Some(&(v, _)) = values.iter().find(|(v, _)| v.fract() != 0.0) {
            return Err(CliError::parse(format!(
                "{}: value {v} is not an integer; use --continuous",
                path.display()
            )));
        }
    }
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut support: Vec<f64> = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    for (v, c) in values {
        if support.last() == Some(&v) {
            *counts.last_mut().unwrap() += c;
        } else {
            support.push(v);
            counts.push(c);
        }
    }
    if support.is_empty() {
        return Err(CliError::parse(format!("{}: no positive values", path.display())));
    }
    EmpiricalDistribution::new(support, counts).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

pub fn fit(args: &FitArgs) -> Result<(), CliError> {
    let discrete = !args.continuous;
    let mut record = RunRecord::new("fit", args, None).input(&args.input);
    let dist = read_fit_input(&args.input, discrete)?;
    let table = fit::fit_table(&dist, discrete, args.xmin)?;
    if let Some(Err(e)) = table.rows.iter().all(|r| r.fit.is_err()).then(|| table.rows[0].fit.clone()) {
        return Err(e.into());
    }
    record.note("xmin", table.xmin);
    record.note("best_heavy_tailed", table.best_heavy_tailed().map(|k| k.as_str()));
    let path = out_file(&args.out, "fit.csv");
    let mut outputs = Outputs::new();
    let problems = write_fit_table(&mut outputs, &path, &table)?;
    if !problems.is_empty() {
        record.note("fit_problems", &problems);
    }
    record.write(&mut outputs, &sidecar_manifest(&path))?;
    outputs.commit();
    Ok(())
}

pub fn decompose(args: &DecomposeArgs) -> Result<(), CliError> {
    let mut record = RunRecord::new("decompose", args, Some(args.seed)).input(&args.input.input);
    let ing = load(&args.input)?;
    note_ingest(&mut record, &ing);
    let g = ing.sequence.build();
    let config = GraphStatsConfig {
        clustering: args.clustering.into(),
        diameter: args.diameter.config(args.seed),
        spectral: SpectralConfig { seed: args.seed, ..Default::default() },
        top_k: args.spectral.top_k,
        tolerance: args.spectral.tol,
    };
    let levels = decompose::analyze_levels(&g, &args.levels, args.max_edge_size, &config)?;
    let dir = out_dir(&args.out_dir);
    let mut outputs = Outputs::new();
    outputs.ensure_dir(&dir)?;
    outputs.write_with(&dir.join("decompose.csv"), |w| {
        writeln!(w, "level,num_vertices,num_edges,largest_cc_fraction,effective_diameter,avg_clustering")?;
        for (dg, s) in &levels {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                dg.level(),
                s.num_vertices,
                s.num_edges,
                num(s.largest_cc_fraction),
                opt(s.effective_diameter.as_ref().map(|d| d.value)),
                num(s.clustering)
            )?;
        }
        Ok(())
    })?;
    outputs.write_with(&dir.join("decompose_degree.csv"), |w| {
        writeln!(w, "level,value,count")?;
        for (dg, s) in &levels {
            if s.degree_distribution.zero_degree > 0 {
                writeln!(w, "{},0,{}", dg.level(), s.degree_distribution.zero_degree)?;
            }
            for (v, c) in s.degree_distribution.distribution.iter() {
                writeln!(w, "{},{},{c}", dg.level(), num(v))?;
            }
        }
        Ok(())
    })?;
    outputs.write_with(&dir.join("decompose_svd.csv"), |w| {
        writeln!(w, "level,rank,sigma")?;
        for (dg, s) in &levels {
            for (i, v) in s.singular_spectrum.values.iter().enumerate() {
                writeln!(w, "{},{},{}", dg.level(), i + 1, num(*v))?;
            }
        }
        Ok(())
    })?;
    record.note("clustering", args.clustering);
    record.write(&mut outputs, &dir.join("manifest.json"))?;
    outputs.commit();
    Ok(())
}

fn slope_row(w: &mut impl Write, quantity: &str, s: &Result<SeriesSlope, temporal::TemporalError>) -> std::io::Result<()> {
    match s {
        Ok(s) => {
            let excluded: Vec<String> = s.excluded.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(
                w,
                "{quantity},{},{},{},{}",
                num(s.fit.slope),
                num(s.fit.intercept),
                num(s.fit.r_squared),
                excluded.join(";")
            )
        }
        Err(_) => writeln!(w, "{quantity},,,,"),
    }
}

pub fn evolve(args: &EvolveArgs) -> Result<(), CliError> {
    let mut record = RunRecord::new("evolve", args, Some(args.seed)).input(&args.input.input);
    let ing = load(&args.input)?;
    note_ingest(&mut record, &ing);
    let seq = &ing.sequence;
    let schedule = if args.by_time {
        temporal::make_time_schedule(seq, args.checkpoints)?
    } else {
        temporal::make_schedule(seq.len(), args.checkpoints)?
    };
    let cfg = args.diameter.config(args.seed);
    let series = temporal::evolve(seq, &schedule, (!args.no_diameter).then_some(&cfg))?;
    let dens = series.densification_slope();
    let t1 = series.interaction_slope();
    for (name, s) in [("densification", &dens), ("interaction", &t1)] {
        if let Err(e) = s {
            record.note(&format!("{name}_slope_error"), e.to_string());
        }
    }
    let dir = out_dir(&args.out_dir);
    let mut outputs = Outputs::new();
    outputs.ensure_dir(&dir)?;
    outputs.write_with(&dir.join("evolution.csv"), |w| {
        writeln!(
            w,
            "checkpoint,k,num_nodes,num_edges,intersecting_pairs,possible_pairs,effective_diameter,low_confidence"
        )?;
        for (i, r) in series.rows.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                i + 1,
                r.k,
                r.num_nodes,
                r.num_edges,
                r.intersecting_pairs,
                r.possible_pairs,
                opt(r.effective_diameter.as_ref().map(|d| d.value)),
                r.low_confidence
            )?;
        }
        Ok(())
    })?;
    outputs.write_with(&dir.join("slopes.csv"), |w| {
        writeln!(w, "quantity,slope,intercept,r_squared,excluded_checkpoints")?;
        slope_row(w, "edges_vs_nodes", &dens)?;
        slope_row(w, "intersecting_vs_possible_pairs", &t1)
    })?;
    record.write(&mut outputs, &dir.join("manifest.json"))?;
    outputs.commit();
    Ok(())
}
