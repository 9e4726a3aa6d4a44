//! Seeded random elements for property tests and the verification suites.
//!
//! The distribution is fixed and documented so reports are reproducible:
//! a term picks a field degree uniformly from `0..=max_field_degree`, then
//! that many jet factors with slot, component, and multi-index each uniform
//! (multi-indices uniform over all orders `<= max_jet_order`), an optional
//! uniform subset of the odd horizontal symbols, and a uniform nonzero
//! integer coefficient in `[-3, 3]`. Products that collapse (an odd factor
//! repeated) are resampled.

use crate::context::JetContext;
use crate::generator::Generator;
use crate::multi_index::MultiIndex;
use crate::poly::Poly;
use crate::rat::q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub struct Sampler {
    rng: ChaCha20Rng,
    pub max_jet_order: u8,
    pub max_field_degree: u32,
}

impl Sampler {
    pub fn new(seed: u64, max_jet_order: u8, max_field_degree: u32) -> Self {
        Sampler { rng: ChaCha20Rng::seed_from_u64(seed), max_jet_order, max_field_degree }
    }

    fn coefficient(&mut self) -> i64 {
        loop {
            let c = self.rng.gen_range(-3..=3i64);
            if c != 0 {
                return c;
            }
        }
    }

    fn multi_index(&mut self, ctx: &JetContext) -> MultiIndex {
        let all = MultiIndex::all_up_to_order(ctx.n, self.max_jet_order.into());
        all[self.rng.gen_range(0..all.len())]
    }

    fn jet_factor(&mut self, ctx: &JetContext) -> Poly {
        let slot = self.rng.gen_range(0..ctx.slots.len());
        let comp = self.rng.gen_range(0..ctx.comps(slot));
        let alpha = self.multi_index(ctx);
        Poly::from_gen(Generator::jet(slot as u8, comp as u8, alpha))
    }

    /// One random term; `None` when the sampled product collapses to zero.
    fn term(&mut self, ctx: &JetContext, with_sigma: bool) -> Option<Poly> {
        let k = self.rng.gen_range(0..=self.max_field_degree);
        let mut t = Poly::constant(q(self.coefficient()));
        for _ in 0..k {
            t = t.mul(&self.jet_factor(ctx), ctx);
            if t.is_zero() {
                return None;
            }
        }
        if with_sigma {
            for i in 0..ctx.n {
                if self.rng.gen_bool(0.5) {
                    t = t.mul(&Poly::from_gen(Generator::Sigma(i as u8)), ctx);
                }
            }
        }
        Some(t)
    }

    /// A random polynomial with `terms` sampled terms (cancellation may
    /// leave fewer; resamples collapsed products).
    pub fn poly(&mut self, ctx: &JetContext, terms: usize, with_sigma: bool) -> Poly {
        let mut out = Poly::zero();
        for _ in 0..terms {
            for _attempt in 0..64 {
                if let Some(t) = self.term(ctx, with_sigma) {
                    out = out.add(&t);
                    break;
                }
            }
        }
        out
    }

    /// A nonzero random polynomial.
    pub fn nonzero_poly(&mut self, ctx: &JetContext, terms: usize, with_sigma: bool) -> Poly {
        loop {
            let p = self.poly(ctx, terms, with_sigma);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A nonzero random polynomial of homogeneous parity (rejection sampled
    /// term by term).
    pub fn homogeneous(&mut self, ctx: &JetContext, parity: u8, terms: usize) -> Poly {
        let mut out = Poly::zero();
        let mut got = 0usize;
        let mut guard = 0usize;
        while got < terms {
            guard += 1;
            assert!(guard < 100_000, "parity rejection sampling stalled");
            let Some(t) = self.term(ctx, true) else { continue };
            if t.is_zero() {
                continue;
            }
            let m = t.terms.keys().next().expect("nonzero poly has a term");
            if m.parity(ctx) != parity {
                continue;
            }
            out = out.add(&t);
            got += 1;
        }
        if out.is_zero() {
            // Cancellation across sampled terms; try again.
            return self.homogeneous(ctx, parity, terms);
        }
        out
    }
}
