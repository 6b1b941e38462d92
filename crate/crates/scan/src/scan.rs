use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use multbound::hilbert::{enumerate_o_sequences, HilbertFunction};
use multbound::monomial::LexTable;
use multbound::verdict::{classify_with, ClassifyOptions, Filters};
use rayon::prelude::*;

use crate::checkpoint::Checkpoint;
use crate::report::{ExceptionRecord, ScanParams, ScanReport};

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub params: ScanParams,
    /// Worker threads; 0 means one per available core.
    pub jobs: usize,
    /// Hilbert functions handed to a worker at a time.
    pub chunk_size: usize,
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: u64,
    /// Stop after this many functions in this run, leaving an incomplete
    /// report and a checkpoint behind.
    pub stop_after: Option<u64>,
}

impl ScanOptions {
    pub fn new(params: ScanParams) -> Self {
        ScanOptions { params, jobs: 0, chunk_size: 512, checkpoint: None, checkpoint_every: 10_000, stop_after: None }
    }
}

/// Normalizes the filter list so equivalent spellings share checkpoints.
pub fn canonical_filters(text: &str) -> Result<String> {
    let f: Filters = text.parse()?;
    Ok(f.to_string())
}

fn report(state: &Checkpoint, complete: bool) -> ScanReport {
    ScanReport {
        params: state.params.clone(),
        counts: state.counts.clone(),
        exceptions: state.exceptions.clone(),
        cursor: state.cursor.clone(),
        status: if complete { "COMPLETE" } else { "INCOMPLETE" }.to_string(),
        elapsed_seconds: state.elapsed_seconds,
    }
}

/// Classifies every Hilbert function of the family in enumeration order.
///
/// Workers take fixed-size chunks and results are merged in order, so the
/// report does not depend on the worker count. With a checkpoint path an
/// existing checkpoint is resumed, after checking that its parameters match.
pub fn run_scan(options: &ScanOptions) -> Result<ScanReport> {
    let params = &options.params;
    let filters: Filters = params.filters.parse()?;
    let classify_options = ClassifyOptions { filters, dfs_cap: params.dfs_cap, keep_survivors: 4 };
    let n = params.vars;

    let mut state = match options.checkpoint.as_deref().map(Checkpoint::load).transpose()?.flatten() {
        Some(cp) => {
            if cp.params != *params {
                bail!("checkpoint was written for different parameters: {:?}", cp.params);
            }
            cp
        }
        None => Checkpoint::fresh(params.clone()),
    };

    let mut sequences = enumerate_o_sequences(n, params.socle_max, &params.prefix)?;
    if let Some(cursor) = &state.cursor {
        let h: HilbertFunction = cursor.parse().context("checkpoint cursor")?;
        sequences = sequences.resume_after(&h)?;
    }

    let pool = rayon::ThreadPoolBuilder::new().num_threads(options.jobs).build()?;
    let chunk = options.chunk_size.max(1);
    let batch = chunk * pool.current_num_threads() * 4;
    let started = Instant::now();
    let base_elapsed = state.elapsed_seconds;
    let mut processed = 0u64;
    let mut unsaved = 0u64;

    let save = |state: &mut Checkpoint| -> Result<()> {
        state.elapsed_seconds = base_elapsed + started.elapsed().as_secs_f64();
        if let Some(path) = &options.checkpoint {
            state.save(path)?;
        }
        Ok(())
    };

    loop {
        let mut limit = batch as u64;
        if let Some(stop) = options.stop_after {
            limit = limit.min(stop - processed);
            if limit == 0 {
                save(&mut state)?;
                return Ok(report(&state, false));
            }
        }
        let items = sequences.by_ref().take(limit as usize).collect::<multbound::Result<Vec<_>>>()?;
        if items.is_empty() {
            break;
        }
        let results: Vec<multbound::Result<Option<ExceptionRecord>>> = pool.install(|| {
            items
                .par_chunks(chunk)
                .map_init(
                    || LexTable::new(n),
                    |table, part| {
                        part.iter()
                            .map(|h| {
                                classify_with(table, h, &classify_options)
                                    .map(|c| ExceptionRecord::from_classification(&c))
                            })
                            .collect::<Vec<_>>()
                    },
                )
                .flatten_iter()
                .collect()
        });
        for (h, result) in items.iter().zip(results) {
            let record = match result {
                Ok(r) => r,
                Err(e) => {
                    save(&mut state)?;
                    return Err(anyhow::Error::new(e).context(format!("classifying {h}")));
                }
            };
            state.counts.record(record.as_ref());
            state.exceptions.extend(record);
            state.cursor = Some(h.to_string());
        }
        processed += items.len() as u64;
        unsaved += items.len() as u64;
        if unsaved >= options.checkpoint_every {
            save(&mut state)?;
            unsaved = 0;
        }
    }
    save(&mut state)?;
    Ok(report(&state, true))
}
