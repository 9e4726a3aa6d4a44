//! The jet context: spacetime dimension, field content with gradings, and
//! the Darboux pairing between fields and antifields.

use crate::generator::Generator;
use crate::lie::LieAlgebra;
use crate::multi_index::MAX_DIM;
use crate::rat::Q;
use crate::{BvError, Result};

/// One field family. A family with `st_indexed = true` contributes `n` slots
/// (one per spacetime direction), otherwise a single slot. Lie-valued
/// families carry `lie.dim` components per slot.
#[derive(Clone, Debug)]
pub struct FieldDescriptor {
    pub name: String,
    pub ghost: i32,
    /// Grassmann parity, 0 or 1.
    pub parity: u8,
    pub st_indexed: bool,
    pub lie_valued: bool,
    /// Index of the family this one is the antifield of, if any.
    pub antifield_of: Option<usize>,
}

/// A concrete slot: a family together with a spacetime index (0 for
/// non-indexed families).
#[derive(Clone, Debug)]
pub struct Slot {
    pub family: usize,
    pub st: u8,
}

/// A Darboux pair of slots: a field slot `x` and its antifield slot `xi`
/// with the same spacetime index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DarbouxPair {
    pub x: usize,
    pub xi: usize,
}

/// Everything the algebra operations need to know about the theory:
/// dimension, fields, gradings, and the Lie algebra with its pairing.
#[derive(Clone, Debug)]
pub struct JetContext {
    pub n: usize,
    pub fields: Vec<FieldDescriptor>,
    pub lie: LieAlgebra,
    pub slots: Vec<Slot>,
    pub pairs: Vec<DarbouxPair>,
    /// For each slot, the pair index and whether the slot is the antifield
    /// side of its pair.
    slot_pair: Vec<(usize, bool)>,
}

impl JetContext {
    pub fn new(n: usize, fields: Vec<FieldDescriptor>, lie: LieAlgebra) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(BvError::Context(format!("spacetime dimension {n} out of range 1..={MAX_DIM}")));
        }
        if fields.is_empty() {
            return Err(BvError::Context("no fields".into()));
        }
        // Pairing must be a complete involution with the right gradings.
        let mut partner = vec![None::<usize>; fields.len()];
        for (i, fd) in fields.iter().enumerate() {
            if fd.parity > 1 {
                return Err(BvError::Context(format!("field `{}` parity must be 0 or 1", fd.name)));
            }
            if let Some(j) = fd.antifield_of {
                let base = fields.get(j).ok_or_else(|| {
                    BvError::Context(format!("field `{}` pairs with missing index {j}", fd.name))
                })?;
                if base.antifield_of.is_some() {
                    return Err(BvError::Context(format!(
                        "antifield `{}` pairs with antifield `{}`",
                        fd.name, base.name
                    )));
                }
                if fd.ghost != -1 - base.ghost {
                    return Err(BvError::Context(format!(
                        "ghost of `{}` must be {} (is {})",
                        fd.name,
                        -1 - base.ghost,
                        fd.ghost
                    )));
                }
                if fd.parity != (1 + base.parity) % 2 {
                    return Err(BvError::Context(format!(
                        "parity of `{}` must be opposite to `{}`",
                        fd.name, base.name
                    )));
                }
                if fd.st_indexed != base.st_indexed || fd.lie_valued != base.lie_valued {
                    return Err(BvError::Context(format!(
                        "`{}` and `{}` must have the same index structure",
                        fd.name, base.name
                    )));
                }
                if partner[j].replace(i).is_some() {
                    return Err(BvError::Context(format!("field `{}` has two antifields", base.name)));
                }
            }
        }
        for (i, fd) in fields.iter().enumerate() {
            if fd.antifield_of.is_none() && partner[i].is_none() {
                return Err(BvError::Context(format!("field `{}` has no antifield", fd.name)));
            }
        }

        // Flatten families into slots; family order first, then spacetime index.
        let mut slots = Vec::new();
        let mut family_slot0 = vec![0usize; fields.len()];
        for (fi, fd) in fields.iter().enumerate() {
            family_slot0[fi] = slots.len();
            let count = if fd.st_indexed { n } else { 1 };
            for st in 0..count {
                slots.push(Slot { family: fi, st: st as u8 });
            }
        }
        if slots.len() > u8::MAX as usize {
            return Err(BvError::Context("too many slots".into()));
        }

        let mut pairs = Vec::new();
        let mut slot_pair = vec![(usize::MAX, false); slots.len()];
        for (fi, fd) in fields.iter().enumerate() {
            if let Some(base) = fd.antifield_of {
                let count = if fd.st_indexed { n } else { 1 };
                for st in 0..count {
                    let xi = family_slot0[fi] + st;
                    let x = family_slot0[base] + st;
                    slot_pair[x] = (pairs.len(), false);
                    slot_pair[xi] = (pairs.len(), true);
                    pairs.push(DarbouxPair { x, xi });
                }
            }
        }

        Ok(JetContext { n, fields, lie, slots, pairs, slot_pair })
    }

    pub fn field_of_slot(&self, slot: usize) -> &FieldDescriptor {
        &self.fields[self.slots[slot].family]
    }

    /// Number of Lie components carried by a slot.
    pub fn comps(&self, slot: usize) -> usize {
        if self.field_of_slot(slot).lie_valued {
            self.lie.dim
        } else {
            1
        }
    }

    pub fn slot_parity(&self, slot: usize) -> u8 {
        self.field_of_slot(slot).parity
    }

    pub fn slot_ghost(&self, slot: usize) -> i32 {
        self.field_of_slot(slot).ghost
    }

    /// The Darboux pair a slot belongs to, and whether it is the antifield
    /// side.
    pub fn pair_of_slot(&self, slot: usize) -> (DarbouxPair, bool) {
        let (pi, is_xi) = self.slot_pair[slot];
        (self.pairs[pi], is_xi)
    }

    /// Grassmann parity of a generator. `sig_i` is odd; `eta` has the parity
    /// of an `n+1`-fold product of odd symbols; `u^i` is even.
    pub fn gen_parity(&self, g: &Generator) -> u8 {
        match g {
            Generator::Jet(v) => self.slot_parity(v.slot as usize),
            Generator::Sigma(_) => 1,
            Generator::Eta => ((self.n + 1) % 2) as u8,
            Generator::U(_) => 0,
        }
    }

    /// Ghost number of a generator. The horizontal symbols are ghost-neutral;
    /// the covariant variables carry ghost two.
    pub fn gen_ghost(&self, g: &Generator) -> i32 {
        match g {
            Generator::Jet(v) => self.slot_ghost(v.slot as usize),
            Generator::Sigma(_) | Generator::Eta => 0,
            Generator::U(_) => 2,
        }
    }

    /// Inverse-pairing entry contracted in bracket kernels; 1x1 identity for
    /// non-Lie-valued pairs.
    pub fn kappa_inv(&self, a: usize, b: usize) -> &Q {
        &self.lie.kappa_inv[a][b]
    }

    pub fn kappa(&self, a: usize, b: usize) -> &Q {
        &self.lie.kappa[a][b]
    }

    /// Display name of a slot, e.g. `A` (indexed slots render their index in
    /// the variable bracket, not the name).
    pub fn slot_name(&self, slot: usize) -> &str {
        &self.fields[self.slots[slot].family].name
    }

    /// Renders a jet variable as `name[i=..;a=..;alpha=(..)]`, omitting the
    /// spacetime index for scalar slots and the component for non-Lie-valued
    /// ones.
    pub fn render_jet(&self, v: &crate::generator::JetVar) -> String {
        let slot = v.slot as usize;
        let fd = self.field_of_slot(slot);
        let mut parts = Vec::new();
        if fd.st_indexed {
            parts.push(format!("i={}", self.slots[slot].st + 1));
        }
        if fd.lie_valued {
            parts.push(format!("a={}", v.comp));
        }
        parts.push(format!("α={}", v.alpha.render(self.n)));
        format!("{}[{}]", fd.name, parts.join(";"))
    }

    pub fn render_generator(&self, g: &Generator) -> String {
        match g {
            Generator::Jet(v) => self.render_jet(v),
            Generator::Sigma(i) => format!("sig{}", i + 1),
            Generator::Eta => "eta".to_string(),
            Generator::U(i) => format!("u{}", i + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_pair_ctx(n: usize) -> JetContext {
        let lie = LieAlgebra::abelian(1, "abelian1").unwrap();
        JetContext::new(
            n,
            vec![
                FieldDescriptor {
                    name: "x".into(),
                    ghost: 0,
                    parity: 0,
                    st_indexed: false,
                    lie_valued: false,
                    antifield_of: None,
                },
                FieldDescriptor {
                    name: "xi".into(),
                    ghost: -1,
                    parity: 1,
                    st_indexed: false,
                    lie_valued: false,
                    antifield_of: Some(0),
                },
            ],
            lie,
        )
        .unwrap()
    }

    #[test]
    fn scalar_pair_context_builds() {
        let ctx = scalar_pair_ctx(2);
        assert_eq!(ctx.slots.len(), 2);
        assert_eq!(ctx.pairs.len(), 1);
        let (p, is_xi) = ctx.pair_of_slot(1);
        assert!(is_xi);
        assert_eq!(p.x, 0);
    }

    #[test]
    fn grading_relations_enforced() {
        let lie = LieAlgebra::abelian(1, "abelian1").unwrap();
        let bad = JetContext::new(
            1,
            vec![
                FieldDescriptor {
                    name: "x".into(),
                    ghost: 0,
                    parity: 0,
                    st_indexed: false,
                    lie_valued: false,
                    antifield_of: None,
                },
                FieldDescriptor {
                    name: "xi".into(),
                    ghost: -2, // wrong: must be -1
                    parity: 1,
                    st_indexed: false,
                    lie_valued: false,
                    antifield_of: Some(0),
                },
            ],
            lie,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn missing_antifield_rejected() {
        let lie = LieAlgebra::abelian(1, "abelian1").unwrap();
        let bad = JetContext::new(
            1,
            vec![FieldDescriptor {
                name: "x".into(),
                ghost: 0,
                parity: 0,
                st_indexed: false,
                lie_valued: false,
                antifield_of: None,
            }],
            lie,
        );
        assert!(bad.is_err());
    }
}
