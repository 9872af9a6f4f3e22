//! Discovery of all simple modules of a group over its splitting field.

use std::sync::{Arc, OnceLock};

use super::meataxe::{chop_with, iso_via_cert, Certificate, ChopOptions};
use super::Representation;
use crate::error::{Error, Result};
use crate::fld::SplittingField;
use crate::grp::{Group, PermGroup};

#[derive(Clone, Debug)]
pub struct SimpleModule {
    pub module: Representation,
    pub cert: Arc<Certificate>,
    pub label: String,
    self_dual: OnceLock<bool>,
}

impl SimpleModule {
    pub fn new(module: Representation, cert: Arc<Certificate>, label: String) -> Self {
        SimpleModule {
            module: module.with_label(label.clone()),
            cert,
            label,
            self_dual: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Intertwiner from this module to `n` if they are isomorphic.
    pub fn iso(&self, n: &Representation) -> Option<crate::mat::Mat> {
        iso_via_cert(&self.module, &self.cert, n)
    }

    pub fn is_self_dual(&self) -> bool {
        *self
            .self_dual
            .get_or_init(|| self.iso(&self.module.dual()).is_some())
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 1 && self.module.is_trivial_action()
    }
}

#[derive(Clone, Debug)]
pub struct SimplesOptions {
    pub seed: u64,
    /// Largest tensor product chopped while searching.
    pub max_tensor_dim: usize,
    /// Largest group order for which the regular module is used as a last
    /// resort.
    pub regular_limit: usize,
}

impl Default for SimplesOptions {
    fn default() -> Self {
        SimplesOptions {
            seed: 1,
            max_tensor_dim: 400,
            regular_limit: 2000,
        }
    }
}

/// The simple modules of a group, labelled by dimension and then order of
/// discovery (`1a`, `2a`, `2b`, ...).
#[derive(Clone, Debug)]
pub struct IrrSet {
    pub group: Group,
    pub field: Arc<SplittingField>,
    pub simples: Vec<SimpleModule>,
}

fn letters(i: usize) -> String {
    let mut s = String::new();
    let mut i = i;
    loop {
        s.insert(0, (b'a' + (i % 26) as u8) as char);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s
}

struct Search {
    opts: ChopOptions,
    found: Vec<(Representation, Arc<Certificate>)>,
}

impl Search {
    fn absorb(&mut self, m: &Representation) -> Result<usize> {
        let rep = chop_with(m, &self.opts)?;
        let mut added = 0;
        for fa in rep.factors {
            let known = self
                .found
                .iter()
                .any(|(s, c)| s.dim() == fa.module.dim() && iso_via_cert(s, c, &fa.module).is_some());
            if !known {
                self.found.push((fa.module, fa.cert));
                added += 1;
            }
        }
        self.opts.seed = self.opts.seed.wrapping_add(1);
        Ok(added)
    }
}

impl IrrSet {
    pub fn compute(group: &Group, field: &Arc<SplittingField>) -> Result<Self> {
        Self::compute_with(group, field, &SimplesOptions::default())
    }

    /// Chops the trivial and natural permutation modules and the regular
    /// module of the abelianization, then tensor products and duals of what
    /// has been found, and the regular module for small groups, until there
    /// are as many simples as 2-regular classes.
    pub fn compute_with(
        group: &Group,
        field: &Arc<SplittingField>,
        opts: &SimplesOptions,
    ) -> Result<Self> {
        let target = group.classes().regular().len();
        let mut s = Search {
            opts: ChopOptions {
                seed: opts.seed,
                check_semisimple: false,
                ..Default::default()
            },
            found: Vec::new(),
        };
        s.absorb(&Representation::trivial(group, field))?;
        if s.found.len() < target && group.degree() > 1 {
            s.absorb(&Representation::permutation_module(group, field))?;
        }
        if s.found.len() < target {
            let d = group.derived_subgroup();
            let index = group.order() / d.order();
            if index > 1 && index <= opts.regular_limit {
                let q: Group = Arc::new(group.quotient(&d)?);
                let reg = Representation::regular_module(&q, field);
                let lifted = Representation::from_images(group, field, reg.images().to_vec(), "inflated");
                s.absorb(&lifted)?;
            }
        }
        let mut tried: Vec<(usize, usize)> = Vec::new();
        while s.found.len() < target {
            let n = s.found.len();
            let mut progress = false;
            for i in 0..n {
                let d = s.found[i].0.dual();
                if s.absorb(&d)? > 0 {
                    progress = true;
                }
            }
            let mut pairs: Vec<(usize, usize)> = (0..s.found.len())
                .flat_map(|i| (i..s.found.len()).map(move |j| (i, j)))
                .filter(|p| !tried.contains(p))
                .filter(|&(i, j)| {
                    let (a, b) = (s.found[i].0.dim(), s.found[j].0.dim());
                    let twist = s.found[i].0.is_trivial_action() || s.found[j].0.is_trivial_action();
                    !twist && a.max(b) > 1 && a * b <= opts.max_tensor_dim
                })
                .collect();
            pairs.sort_by_key(|&(i, j)| (s.found[i].0.dim() * s.found[j].0.dim(), i, j));
            for (i, j) in pairs {
                if s.found.len() >= target {
                    break;
                }
                tried.push((i, j));
                let t = s.found[i].0.tensor(&s.found[j].0)?;
                if s.absorb(&t)? > 0 {
                    progress = true;
                    break;
                }
            }
            if !progress {
                break;
            }
        }
        if s.found.len() < target && group.order() <= opts.regular_limit {
            s.absorb(&Representation::regular_module(group, field))?;
        }
        if s.found.len() < target {
            return Err(Error::Incomplete(format!(
                "found {} of {} simple modules for {}",
                s.found.len(),
                target,
                group.name()
            )));
        }
        if s.found.len() > target {
            return Err(Error::Finding(format!(
                "{} pairwise non-isomorphic simples but only {} 2-regular classes",
                s.found.len(),
                target
            )));
        }
        let mut order: Vec<usize> = (0..s.found.len()).collect();
        // Trivial module first among the 1-dimensional ones.
        order.sort_by_key(|&i| (s.found[i].0.dim(), !s.found[i].0.is_trivial_action(), i));
        let mut simples = Vec::with_capacity(order.len());
        let mut per_dim = 0;
        let mut last_dim = 0;
        for &i in &order {
            let (m, c) = &s.found[i];
            if m.dim() != last_dim {
                last_dim = m.dim();
                per_dim = 0;
            }
            let label = format!("{}{}", m.dim(), letters(per_dim));
            per_dim += 1;
            simples.push(SimpleModule::new(m.clone(), c.clone(), label));
        }
        Ok(IrrSet {
            group: group.clone(),
            field: field.clone(),
            simples,
        })
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SimpleModule> {
        self.simples.iter()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.simples.iter().map(|s| s.dim()).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.simples.iter().map(|s| s.label.as_str()).collect()
    }

    pub fn by_label(&self, label: &str) -> Option<&SimpleModule> {
        self.simples.iter().find(|s| s.label == label)
    }

    /// Index of the simple module isomorphic to `m`.
    pub fn identify(&self, m: &Representation) -> Option<usize> {
        self.simples
            .iter()
            .position(|s| s.dim() == m.dim() && s.iso(m).is_some())
    }

    pub fn trivial_index(&self) -> usize {
        self.simples
            .iter()
            .position(|s| s.is_trivial())
            .expect("trivial module is always found")
    }

    /// Index of the dual of each simple.
    pub fn dual_map(&self) -> Vec<usize> {
        self.simples
            .iter()
            .map(|s| {
                self.identify(&s.module.dual())
                    .expect("dual of a simple module is simple")
            })
            .collect()
    }

    /// Composition multiplicities of `m` indexed like the simples.
    pub fn composition_multiplicities(&self, m: &Representation, seed: u64) -> Result<Vec<usize>> {
        let rep = chop_with(
            m,
            &ChopOptions {
                seed,
                check_semisimple: false,
                ..Default::default()
            },
        )?;
        let mut out = vec![0; self.len()];
        for fa in &rep.factors {
            let i = self.identify(&fa.module).ok_or_else(|| {
                Error::Finding(format!("composition factor of dimension {} is not in the list", fa.module.dim()))
            })?;
            out[i] += fa.multiplicity;
        }
        Ok(out)
    }
}

/// The simple modules of a subgroup given on the same points.
pub fn simples_of_subgroup(h: &PermGroup, field: &Arc<SplittingField>) -> Result<IrrSet> {
    let h: Group = Arc::new(
        PermGroup::new(h.degree(), h.gens().to_vec(), h.order().max(1))?.named(h.name().to_string()),
    );
    IrrSet::compute(&h, field)
}
