use num_bigint::BigUint;

use super::Perm;

const NONE: u32 = u32::MAX;

/// One level of a stabilizer chain: the orbit of the base point under the
/// level's strong generators, with explicit transversal elements.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: u32,
    pub(crate) gens: Vec<Perm>,
    pub(crate) orbit: Vec<u32>,
    /// Position of each point in `orbit`, or `NONE`.
    pos: Vec<u32>,
    /// `trans[k]` maps the base point to `orbit[k]`.
    trans: Vec<Perm>,
    trans_inv: Vec<Perm>,
    /// Tree edge `(orbit index of parent, generator index)` per orbit point.
    edge: Vec<(u32, u32)>,
    /// Next `(generator, orbit point)` Schreier pair to check.
    cursor: (usize, usize),
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            trans: vec![Perm::identity(degree)],
            trans_inv: vec![Perm::identity(degree)],
            edge: vec![(NONE, NONE)],
            cursor: (0, 0),
        }
    }

    /// Extends the orbit after generators were added.
    fn grow_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k];
            for (gi, g) in self.gens.iter().enumerate() {
                let img = g.image(beta as usize) as u32;
                if self.pos[img as usize] == NONE {
                    self.pos[img as usize] = self.orbit.len() as u32;
                    self.orbit.push(img);
                    let t = self.trans[k].then(g);
                    self.trans_inv.push(t.inverse());
                    self.trans.push(t);
                    self.edge.push((k as u32, gi as u32));
                }
            }
            k += 1;
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens.push(g);
        self.cursor = (0, 0);
        self.grow_orbit();
    }

    pub(crate) fn orbit_index(&self, point: usize) -> Option<usize> {
        match self.pos[point] {
            NONE => None,
            k => Some(k as usize),
        }
    }

    pub(crate) fn transversal(&self, k: usize) -> &Perm {
        &self.trans[k]
    }

    pub(crate) fn transversal_inverse(&self, k: usize) -> &Perm {
        &self.trans_inv[k]
    }
}

/// Base and strong generating set built by the deterministic Schreier–Sims
/// algorithm. Base points are the smallest points moved by the remaining
/// generators.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        Self::with_base(degree, gens, &[])
    }

    /// Chain whose base starts with `prefix`; further points are added as
    /// needed.
    pub fn with_base(degree: usize, gens: &[Perm], prefix: &[usize]) -> Self {
        let gens: Vec<&Perm> = gens.iter().filter(|g| !g.is_identity()).collect();
        let mut base: Vec<u32> = prefix.iter().map(|&b| b as u32).collect();
        for g in &gens {
            if base.iter().all(|&b| g.image(b as usize) == b as usize) {
                base.push(g.smallest_moved().expect("non-identity") as u32);
            }
        }
        let mut chain = StabChain { degree, levels: base.iter().map(|&b| Level::new(b, degree)).collect() };
        for g in gens {
            for l in 0..chain.levels.len() {
                chain.levels[l].gens.push(g.clone());
                if g.image(base[l] as usize) != base[l] as usize {
                    break;
                }
            }
        }
        for level in &mut chain.levels {
            level.grow_orbit();
        }
        chain.complete();
        chain
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// where it dropped out (`levels.len()` if it sifted through).
    pub(crate) fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.base as usize);
            match level.orbit_index(beta) {
                None => return (h, l),
                Some(k) => {
                    if k != 0 {
                        h = h.then(level.transversal_inverse(k));
                    }
                }
            }
        }
        (h, self.levels.len())
    }

    /// Runs Schreier generator checks until every level is closed.
    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            match self.next_failure(i) {
                Some((h, j)) => {
                    // h fixes base points 0..=i; it belongs to levels i+1..=j.
                    let from = i + 1;
                    if j == self.levels.len() {
                        let b = h.smallest_moved().expect("non-identity");
                        self.levels.push(Level::new(b as u32, self.degree));
                    }
                    for l in from..=j.min(self.levels.len() - 1) {
                        self.levels[l].add_gen(h.clone());
                    }
                    i = j.min(self.levels.len() - 1);
                }
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
    }

    /// Checks the remaining Schreier generators of level `i`; returns the
    /// first non-trivial residue with its drop-out level.
    fn next_failure(&mut self, i: usize) -> Option<(Perm, usize)> {
        loop {
            let level = &self.levels[i];
            let (gi, k) = level.cursor;
            if gi >= level.gens.len() {
                return None;
            }
            if k >= level.orbit.len() {
                self.levels[i].cursor = (gi + 1, 0);
                continue;
            }
            self.levels[i].cursor = (gi, k + 1);
            let level = &self.levels[i];
            let g = &level.gens[gi];
            let img = g.image(level.orbit[k] as usize);
            let m = level.orbit_index(img).expect("orbit is closed");
            if level.edge[m] == (k as u32, gi as u32) {
                continue;
            }
            let schreier = level.trans[k].then(g).then(&level.trans_inv[m]);
            if schreier.is_identity() {
                continue;
            }
            let (h, j) = self.sift(&schreier, i + 1);
            if !h.is_identity() {
                return Some((h, j));
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize).collect()
    }

    /// Basic orbit lengths; their product is the group order.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && {
            let (h, j) = self.sift(p, 0);
            j == self.levels.len() && h.is_identity()
        }
    }

    /// Strong generators of the stabilizer of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Perm> {
        self.levels.get(k).map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Calls `f` on every group element, each exactly once.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm)) {
        fn rec(chain: &StabChain, level: usize, acc: &Perm, f: &mut dyn FnMut(&Perm)) {
            if level == usize::MAX {
                f(acc);
                return;
            }
            let l = &chain.levels[level];
            let next = level.checked_sub(1).unwrap_or(usize::MAX);
            for k in 0..l.orbit.len() {
                let p = acc.then(l.transversal(k));
                rec(chain, next, &p, f);
            }
        }
        let id = Perm::identity(self.degree);
        if self.levels.is_empty() {
            f(&id);
        } else {
            rec(self, self.levels.len() - 1, &id, &mut f);
        }
    }

    /// Membership from base images alone. `imgs[l]` is the image of the
    /// `l`-th base point; valid only for elements of a group for which this
    /// chain's base is also a base.
    pub(crate) fn contains_by_base_images(&self, imgs: &mut [u32]) -> bool {
        debug_assert_eq!(imgs.len(), self.levels.len());
        for l in 0..self.levels.len() {
            let level = &self.levels[l];
            let Some(k) = level.orbit_index(imgs[l] as usize) else { return false };
            if k != 0 {
                let u = level.transversal_inverse(k);
                for x in &mut imgs[l + 1..] {
                    *x = u.image(*x as usize) as u32;
                }
            }
        }
        true
    }

    /// Calls `f` with the images of `points` under every group element.
    pub(crate) fn for_each_image_of(&self, points: &[u32], f: &mut dyn FnMut(&[u32])) {
        fn rec(chain: &StabChain, level: usize, imgs: &[u32], f: &mut dyn FnMut(&[u32])) {
            if level == usize::MAX {
                f(imgs);
                return;
            }
            let l = &chain.levels[level];
            let next = level.checked_sub(1).unwrap_or(usize::MAX);
            let mut buf = vec![0u32; imgs.len()];
            for k in 0..l.orbit.len() {
                let u = l.transversal(k);
                for (b, &x) in buf.iter_mut().zip(imgs) {
                    *b = u.image(x as usize) as u32;
                }
                rec(chain, next, &buf, f);
            }
        }
        if self.levels.is_empty() {
            f(points);
        } else {
            rec(self, self.levels.len() - 1, points, f);
        }
    }
}
