use rand::Rng;

use super::Formula;

/// Random formulas over a fixed set of atoms.
#[derive(Clone, Debug)]
pub struct FormulaGen {
    atoms: Vec<Formula>,
    max_depth: usize,
    derived: bool,
}

impl FormulaGen {
    /// `derived` also allows `~`, `T`, `&.`, `|.`, `&` and `|`.
    pub fn new(atoms: &[&str], max_depth: usize, derived: bool) -> Self {
        assert!(!atoms.is_empty());
        FormulaGen {
            atoms: atoms.iter().map(|a| Formula::atom(a)).collect(),
            max_depth,
            derived,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        self.sample_depth(rng, self.max_depth)
    }

    fn sample_depth<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Formula {
        let leaf = depth == 0 || rng.gen_ratio(1, 4);
        if leaf {
            let k = rng.gen_range(0..self.atoms.len() + 1 + usize::from(self.derived));
            return match k {
                k if k < self.atoms.len() => self.atoms[k].clone(),
                k if k == self.atoms.len() => Formula::bottom(),
                _ => Formula::top(),
            };
        }
        let d = depth - 1;
        let ops = if self.derived { 7 } else { 1 };
        match rng.gen_range(0..ops) {
            0 => Formula::implies(self.sample_depth(rng, d), self.sample_depth(rng, d)),
            1 => Formula::neg(self.sample_depth(rng, d)),
            2 => Formula::sconj(self.sample_depth(rng, d), self.sample_depth(rng, d)),
            3 => Formula::sdisj(self.sample_depth(rng, d), self.sample_depth(rng, d)),
            4 => Formula::meet(self.sample_depth(rng, d), self.sample_depth(rng, d)),
            5 => Formula::join(self.sample_depth(rng, d), self.sample_depth(rng, d)),
            _ => Formula::implies(self.sample_depth(rng, d), self.sample_depth(rng, d)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_generation_is_reproducible() {
        let g = FormulaGen::new(&["p", "q"], 4, true);
        let a: Vec<String> = (0..20)
            .map({
                let mut r = ChaCha8Rng::seed_from_u64(7);
                move |_| g.sample(&mut r).to_string()
            })
            .collect();
        let g = FormulaGen::new(&["p", "q"], 4, true);
        let mut r = ChaCha8Rng::seed_from_u64(7);
        let b: Vec<String> = (0..20).map(|_| g.sample(&mut r).to_string()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn core_generator_stays_core() {
        let g = FormulaGen::new(&["p"], 5, false);
        let mut r = ChaCha8Rng::seed_from_u64(1);
        assert!((0..50).all(|_| g.sample(&mut r).is_core()));
    }
}
