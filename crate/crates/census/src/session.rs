//! The pipeline with a cache and a thread pool attached.

use std::time::Instant;

use census_core::census::{betti_from, count_from, degree_class, kac_classes, kac_rational};
use census_core::{BettiResult, CurveData, FactoredRat, KacResult, PointCount, Result};

use crate::{Cache, Pool};

pub struct Session {
    pub pool: Pool,
    pub cache: Option<Cache>,
}

impl Session {
    pub fn new(jobs: Option<usize>, cache: Option<Cache>) -> Self {
        Session { pool: Pool::new(jobs), cache }
    }

    /// `A_{g,r}(z)`, from the cache when present.
    pub fn rational(&self, g: usize, r: u32) -> Result<FactoredRat> {
        if let Some(f) = self.cache.as_ref().and_then(|c| c.load_rational(g, r)) {
            log::info!("cache hit for A_{{{g},{r}}}(z)");
            return Ok(f);
        }
        let start = Instant::now();
        let f = kac_rational(g, r, &self.pool)?;
        log::info!("A_{{{g},{r}}}(z) in {:?} on {} threads", start.elapsed(), self.pool.threads());
        if let Some(c) = &self.cache {
            if let Err(e) = c.store_rational(g, r, &f) {
                log::warn!("cache write failed: {e}");
            }
        }
        Ok(f)
    }

    pub fn kac(&self, g: usize, r: u32, d: i64) -> Result<KacResult> {
        if r == 0 {
            return Err(census_core::CensusError::InvalidInput("rank must be positive".into()));
        }
        let class = degree_class(d, r);
        if let Some(k) = self.cache.as_ref().and_then(|c| c.load_result(g, r, class)) {
            return Ok(k);
        }
        let start = Instant::now();
        let a = self.rational(g, r)?;
        let mut all = kac_classes(g, r, &a)?;
        for k in &mut all {
            k.provenance.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
        if let Some(c) = &self.cache {
            for k in &all {
                if let Err(e) = c.store_result(k) {
                    log::warn!("cache write failed: {e}");
                }
            }
        }
        Ok(all.swap_remove(class as usize))
    }

    pub fn betti(&self, g: usize, r: u32, d: i64) -> Result<BettiResult> {
        betti_from(&self.kac(g, r, d)?, d)
    }

    pub fn count(&self, curve: &CurveData, r: u32, d: i64) -> Result<PointCount> {
        count_from(&self.kac(curve.genus, r, d)?, curve, d)
    }
}
