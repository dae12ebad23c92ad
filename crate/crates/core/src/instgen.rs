//! Seeded instance generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha` 0.9) seeded with
//! `seed_from_u64(seed)`; instance `i` of a series uses stream `i` of that
//! generator, so a series is reproducible regardless of the order in which
//! its instances are built. Classes are drawn first, then items.
//!
//! Two families are produced:
//!
//! * known-optimum: initial items are First-Fit packed into largest bins,
//!   every non-full bin is topped up with one filler item, and all pieces are
//!   shuffled and glued in groups of `D + 1`. The full largest bins are an
//!   optimal packing, so the optimum is `bins × c_max`.
//! * free: initial items glued in groups of `D + 1`, no fillers, no optimum.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::auxiliary::{pack_ff, UniformPackingRequest};
use crate::error::{Error, Result};
use crate::model::{BinClass, CostModel, Instance};

/// Name and version written into instance file headers. Bump the version
/// whenever the draw sequence changes.
pub const GENERATOR_ID: &str = "vscif-instgen/1 chacha8(rand_chacha 0.9)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    KnownOptimum,
    Free,
}

impl std::str::FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimum" | "known-optimum" => Ok(GenMode::KnownOptimum),
            "free" => Ok(GenMode::Free),
            other => Err(Error::Config(format!("unknown generator mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenConfig {
    pub seed: u64,
    /// Number of bin classes.
    pub m: usize,
    pub b_max: u64,
    pub n_initial: usize,
    pub item_low: u64,
    pub item_high: u64,
    pub cut_limit: u32,
    pub cost_model: CostModel,
    pub mode: GenMode,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            m: 3,
            b_max: 100,
            n_initial: 200,
            item_low: 1,
            item_high: 99,
            cut_limit: 1,
            cost_model: CostModel::Linear,
            mode: GenMode::KnownOptimum,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Config("m must be at least 1".into()));
        }
        if self.b_max < 2 && self.m > 1 {
            return Err(Error::Config("b_max must exceed 1 when m > 1".into()));
        }
        if (self.m as u64 - 1) > self.b_max.saturating_sub(1) {
            return Err(Error::Config(format!(
                "cannot draw {} distinct capacities below {}",
                self.m - 1,
                self.b_max
            )));
        }
        if self.item_low == 0 || self.item_low > self.item_high || self.item_high >= self.b_max {
            return Err(Error::Config(format!(
                "item range [{}, {}] must satisfy 1 <= low <= high < b_max = {}",
                self.item_low, self.item_high, self.b_max
            )));
        }
        Ok(())
    }

    /// Comment header for instance files.
    pub fn header(&self, stream: u64) -> String {
        format!(
            "# generator: {GENERATOR_ID}\n# seed={} stream={stream} m={} b_max={} n_initial={} items=[{},{}] cut_limit={} cost={} mode={}\n",
            self.seed,
            self.m,
            self.b_max,
            self.n_initial,
            self.item_low,
            self.item_high,
            self.cut_limit,
            self.cost_model,
            match self.mode {
                GenMode::KnownOptimum => "optimum",
                GenMode::Free => "free",
            }
        )
    }
}

/// The generator for instance `stream` of the series seeded by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Builds instance `stream` of the series described by `cfg`.
pub fn generate(cfg: &GenConfig, stream: u64) -> Result<Instance<u64>> {
    let mut rng = rng_for(cfg.seed, stream);
    match cfg.mode {
        GenMode::KnownOptimum => gen_known_optimum(cfg, &mut rng),
        GenMode::Free => gen_free(cfg, &mut rng),
    }
}

/// `b_max` plus `m - 1` distinct capacities from `[1, b_max - 1]`, sorted
/// decreasing. Linear: cost = capacity. Monotone: `c_1 = b_max` and each next
/// cost is uniform in `[b_{i+1}, c_i - 1]`, redrawn until the unit cost does
/// not drop below that of the previous class.
pub fn gen_classes<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Result<Vec<BinClass<u64>>> {
    cfg.validate()?;
    let mut caps: Vec<u64> = index::sample(rng, (cfg.b_max - 1) as usize, cfg.m - 1)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect();
    caps.push(cfg.b_max);
    caps.sort_unstable_by(|a, b| b.cmp(a));

    let mut classes = Vec::with_capacity(caps.len());
    classes.push(BinClass::linear(cfg.b_max));
    for w in caps.windows(2) {
        let (big_cap, cap) = (w[0], w[1]);
        let cost = match cfg.cost_model {
            CostModel::Linear => cap,
            CostModel::Monotone => {
                let prev = classes.last().map(|c: &BinClass<u64>| c.cost).expect("first class pushed");
                loop {
                    let c = rng.random_range(cap..=prev - 1);
                    // prev / big_cap <= c / cap
                    if u128::from(prev) * u128::from(cap) <= u128::from(c) * u128::from(big_cap) {
                        break c;
                    }
                }
            }
        };
        classes.push(BinClass::new(cap, cost));
    }
    Ok(classes)
}

fn initial_sizes<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Vec<u64> {
    (0..cfg.n_initial)
        .map(|_| rng.random_range(cfg.item_low..=cfg.item_high))
        .collect()
}

/// Glues consecutive groups of `group` pieces; a short trailing group is kept.
fn glue(pieces: &[u64], group: usize) -> Vec<u64> {
    pieces.chunks(group).map(|c| c.iter().sum()).collect()
}

pub fn gen_known_optimum<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Result<Instance<u64>> {
    if cfg.mode != GenMode::KnownOptimum {
        return Err(Error::Config("gen_known_optimum needs mode = known-optimum".into()));
    }
    let classes = gen_classes(cfg, rng)?;
    let mut pieces = initial_sizes(cfg, rng);
    let packing = pack_ff(&UniformPackingRequest::new(pieces.clone(), cfg.b_max))?;
    let full_bins = packing.len() as u64;
    pieces.extend(
        packing
            .bins
            .iter()
            .map(|b| cfg.b_max - b.load())
            .filter(|&filler| filler > 0),
    );
    pieces.shuffle(rng);
    let items = glue(&pieces, cfg.cut_limit as usize + 1);
    let optimum = (full_bins > 0).then(|| full_bins * classes[0].cost);
    Instance::new(items, classes, cfg.cut_limit, cfg.cost_model)?.with_known_optimum(optimum)
}

pub fn gen_free<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Result<Instance<u64>> {
    if cfg.mode != GenMode::Free {
        return Err(Error::Config("gen_free needs mode = free".into()));
    }
    let classes = gen_classes(cfg, rng)?;
    let pieces = initial_sizes(cfg, rng);
    let items = glue(&pieces, cfg.cut_limit as usize + 1);
    Instance::new(items, classes, cfg.cut_limit, cfg.cost_model)
}
