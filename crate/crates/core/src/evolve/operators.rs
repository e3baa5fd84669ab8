use rand::seq::SliceRandom;
use rand::Rng;

use super::{Individual, SolverConfig};
use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::stream;

pub(crate) const INIT_STREAM: u64 = 1;

/// The `t` with `n = (t + 1) + k(t + 2)`, if it is a non-negative integer.
pub fn counterexample_parameter(n: usize, k: u32) -> Option<usize> {
    let k = k as usize;
    let rest = (n as isize) - 1 - 2 * k as isize;
    (rest >= 0 && rest as usize % (k + 1) == 0).then(|| rest as usize / (k + 1))
}

/// Builds the starting population.
///
/// When the counterexample family has a member of order `n`, the first
/// `⌊r1·N⌋` individuals are mutated copies of it; everything else is a
/// uniform random graph (each bit set with probability 1/2).
pub fn initialize(config: &SolverConfig) -> Result<Vec<Individual>> {
    config.validate()?;
    let mut rng = stream::derive(config.seed, &[INIT_STREAM]);
    let seeded = match counterexample_parameter(config.n, config.k) {
        Some(_) => (config.counterexample_fraction * config.population as f64).floor() as usize,
        None => 0,
    };
    let mut population = Vec::with_capacity(config.population);
    if seeded > 0 {
        let t = counterexample_parameter(config.n, config.k).expect("checked above");
        let base = Family::Counterexample { k: config.k as usize, t }.build()?;
        for _ in 0..seeded {
            population.push(Individual::new(binary_mutation(&base, config.mutation_rate, &mut rng)?));
        }
    }
    while population.len() < config.population {
        population.push(Individual::new(random_graph(config.n, &mut rng)?));
    }
    Ok(population)
}

pub fn random_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    let bits: Vec<bool> = (0..crate::graph::bit_len(n)).map(|_| rng.gen_bool(0.5)).collect();
    Graph::from_bits(n, &bits)
}

/// Flips each encoding bit independently with probability `rate`.
pub fn binary_mutation<R: Rng + ?Sized>(g: &Graph, rate: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::invalid(format!("mutation rate {rate} outside [0, 1]")));
    }
    let mut bits = g.bits();
    for bit in bits.iter_mut() {
        if rng.gen::<f64>() < rate {
            *bit = !*bit;
        }
    }
    Graph::from_bits(g.order(), &bits)
}

/// Cuts both parents at one position `c ∈ [1, D)` and swaps the tails.
/// Encodings shorter than two bits have no admissible cut and are copied.
pub fn single_point_crossover<R: Rng + ?Sized>(
    p1: &Graph,
    p2: &Graph,
    rng: &mut R,
) -> Result<(Graph, Graph)> {
    if p1.order() != p2.order() {
        return Err(Error::invalid(format!(
            "crossover needs equal orders, got {} and {}",
            p1.order(),
            p2.order()
        )));
    }
    let d = p1.bit_len();
    if d < 2 {
        return Ok((p1.clone(), p2.clone()));
    }
    let cut = rng.gen_range(1..d);
    Ok(crossover_at(p1, p2, cut))
}

pub(crate) fn crossover_at(p1: &Graph, p2: &Graph, cut: usize) -> (Graph, Graph) {
    let (a, b) = (p1.bits(), p2.bits());
    let mut c1 = a[..cut].to_vec();
    c1.extend_from_slice(&b[cut..]);
    let mut c2 = b[..cut].to_vec();
    c2.extend_from_slice(&a[cut..]);
    let n = p1.order();
    (
        Graph::from_bits(n, &c1).expect("same length"),
        Graph::from_bits(n, &c2).expect("same length"),
    )
}

/// Produces `count` mutated offspring from random non-self pairs.
pub(crate) fn offspring<R: Rng + ?Sized>(
    parents: &[Graph],
    count: usize,
    rate: f64,
    rng: &mut R,
) -> Result<Vec<Graph>> {
    let mut out = Vec::with_capacity(count + 1);
    if parents.len() < 2 {
        for _ in 0..count {
            out.push(binary_mutation(&parents[0], rate, rng)?);
        }
        return Ok(out);
    }
    while out.len() < count {
        let mut order: Vec<usize> = (0..parents.len()).collect();
        order.shuffle(rng);
        for pair in order.chunks(2) {
            let (i, j) = match *pair {
                [i, j] => (i, j),
                [i] => {
                    let mut j = rng.gen_range(0..parents.len() - 1);
                    if j >= i {
                        j += 1;
                    }
                    (i, j)
                }
                _ => unreachable!(),
            };
            let (c1, c2) = single_point_crossover(&parents[i], &parents[j], rng)?;
            out.push(binary_mutation(&c1, rate, rng)?);
            out.push(binary_mutation(&c2, rate, rng)?);
            if out.len() >= count {
                break;
            }
        }
    }
    out.truncate(count);
    Ok(out)
}
