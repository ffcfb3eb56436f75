//! Shifted Halton points for spreading search starts.

use rand::Rng;

fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2u64;
    while out.len() < count {
        if out
            .iter()
            .take_while(|&&p| p * p <= n)
            .all(|&p| !n.is_multiple_of(p))
        {
            out.push(n);
        }
        n += 1;
    }
    out
}

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base) as f64 * f;
        index /= base;
        f *= inv;
    }
    out
}

/// Halton sequence in `[0, 1)^dim` with a random Cranley-Patterson rotation.
pub(crate) struct ShiftedHalton {
    bases: Vec<u64>,
    shift: Vec<f64>,
    next: u64,
}

impl ShiftedHalton {
    pub(crate) fn new<R: Rng>(dim: usize, rng: &mut R) -> Self {
        Self {
            bases: primes(dim),
            shift: (0..dim).map(|_| rng.random::<f64>()).collect(),
            next: 1,
        }
    }
}

impl Iterator for ShiftedHalton {
    type Item = Vec<f64>;

    fn next(&mut self) -> Option<Vec<f64>> {
        let i = self.next;
        self.next += 1;
        Some(
            self.bases
                .iter()
                .zip(&self.shift)
                .map(|(&b, s)| (radical_inverse(i, b) + s).fract())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn first_primes() {
        assert_eq!(primes(6), vec![2, 3, 5, 7, 11, 13]);
    }

    #[test]
    fn van_der_corput() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(5, 3) - 7.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn points_stay_in_unit_cube() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in ShiftedHalton::new(5, &mut rng).take(500) {
            assert!(p.iter().all(|u| (0.0..1.0).contains(u)));
        }
    }
}
