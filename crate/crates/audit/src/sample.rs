//! Seeded sampling of `(tau, z, n, p)` points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wp_products::{pole_distance, Complex64, LatticeTau};

/// One evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub tau: Complex64,
    pub z: Complex64,
    /// Transformation order (1 when the record has none).
    pub n: u32,
    /// Offset in the `(tau + 2p)/n` transformation.
    pub p: i64,
}

impl Sample {
    /// The fixed smoke point `tau = 1.1i`, `z = 0.31 + 0.17i`, `n = 3`.
    pub fn smoke() -> Self {
        Self {
            tau: Complex64::new(0.0, 1.1),
            z: Complex64::new(0.31, 0.17),
            n: 3,
            p: 0,
        }
    }
}

/// Shift families whose points `z + m h` (m = 0..n-1) must avoid the
/// half-period lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    TwoOverN,
    OneOverN,
    /// `h = 2 (tau + 2p)/n`.
    TauOverN,
}

impl Step {
    fn value(self, s: &Sample) -> Complex64 {
        let n = s.n as f64;
        match self {
            Step::TwoOverN => Complex64::new(2.0 / n, 0.0),
            Step::OneOverN => Complex64::new(1.0 / n, 0.0),
            Step::TauOverN => (s.tau + 2.0 * s.p as f64) * (2.0 / n),
        }
    }
}

/// Where a record may be sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    /// Allowed orders; `None` for records without one.
    pub orders: Option<Vec<u32>>,
    /// Allowed offsets `p`.
    pub offsets: Vec<i64>,
    /// `z = a + b tau` with `|a|, |b| <= z_box`.
    pub z_box: f64,
    pub steps: Vec<Step>,
}

impl Default for Domain {
    fn default() -> Self {
        Self {
            orders: None,
            offsets: vec![0],
            z_box: 1.0,
            steps: Vec::new(),
        }
    }
}

impl Domain {
    pub fn with_z_box(mut self, r: f64) -> Self {
        self.z_box = r;
        self
    }

    /// Orders 3 and 5 with the given guarded shift families.
    pub fn transform(steps: &[Step]) -> Self {
        Self {
            orders: Some(vec![3, 5]),
            steps: steps.to_vec(),
            ..Self::default()
        }
    }

    pub fn with_offsets(mut self, p: &[i64]) -> Self {
        self.offsets = p.to_vec();
        self
    }
}

/// Sampling parameters shared by every record of an audit run.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub seed: u64,
    pub n_samples: usize,
    pub tau_re: (f64, f64),
    pub tau_im: (f64, f64),
    /// Restricts the orders of transformation records.
    pub orders: Option<Vec<u32>>,
    /// Minimum distance of every guarded point from the half-period lattice.
    pub guard: f64,
}

impl Default for SampleGrid {
    fn default() -> Self {
        Self {
            seed: 7,
            n_samples: 50,
            tau_re: (-1.0, 1.0),
            tau_im: (0.8, 2.0),
            orders: None,
            guard: 0.05,
        }
    }
}

impl SampleGrid {
    pub fn new(seed: u64, n_samples: usize) -> Self {
        Self {
            seed,
            n_samples,
            ..Self::default()
        }
    }

    /// Orders usable for `domain`; empty if the grid excludes all of them.
    pub fn orders_for(&self, domain: &Domain) -> Vec<u32> {
        match (&domain.orders, &self.orders) {
            (None, _) => vec![1],
            (Some(d), None) => d.clone(),
            (Some(d), Some(g)) => d.iter().copied().filter(|n| g.contains(n)).collect(),
        }
    }
}

/// 64-bit FNV-1a, used to give every record its own stream.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn rng_for(seed: u64, id: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(id))
}

/// Whether every guarded point of `s` keeps `guard` away from the lattice
/// and its half-periods.
pub fn admissible(s: &Sample, domain: &Domain, guard: f64) -> bool {
    let Ok(lat) = LatticeTau::new(s.tau) else {
        return false;
    };
    let halves = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        s.tau,
        s.tau + 1.0,
    ];
    let clear = |x: Complex64| halves.iter().all(|&h| pole_distance(x - h, &lat) > guard);
    if !clear(s.z) {
        return false;
    }
    domain.steps.iter().all(|step| {
        let h = step.value(s);
        (1..s.n).all(|m| clear(s.z + h * m as f64))
    })
}

/// Draws one candidate point; `None` if it violates the guard.
pub fn draw(rng: &mut ChaCha8Rng, grid: &SampleGrid, domain: &Domain, orders: &[u32]) -> Option<Sample> {
    let n = orders[rng.gen_range(0..orders.len())];
    let p = domain.offsets[rng.gen_range(0..domain.offsets.len())];
    let tau = Complex64::new(
        rng.gen_range(grid.tau_re.0..=grid.tau_re.1),
        rng.gen_range(grid.tau_im.0..=grid.tau_im.1),
    );
    let r = domain.z_box;
    let a = rng.gen_range(-r..=r);
    let b = rng.gen_range(-r..=r);
    let s = Sample {
        tau,
        z: a + tau * b,
        n,
        p,
    };
    admissible(&s, domain, grid.guard).then_some(s)
}
