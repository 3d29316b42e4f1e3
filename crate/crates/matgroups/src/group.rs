use crate::fingroup::FinGroup;
use exact_linalg::{det, IntMat};
use num_bigint::BigInt;
use num_traits::Signed;
use std::collections::HashMap;

pub const DEFAULT_ELEMENT_CAP: usize = 2304;

#[derive(thiserror::Error, Debug)]
pub enum GroupError {
    #[error("element cap {cap} exceeded during closure")]
    CapExceeded { cap: usize },
    #[error("generator {index} is not unimodular")]
    NonUnimodular { index: usize },
    #[error("generator {index} is not square of degree {expected}")]
    DegreeMismatch { index: usize, expected: usize },
    #[error("no generators supplied and no degree given")]
    NoGenerators,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("cap {cap} exceeded: group order is {order}")]
    OrderOverCap { cap: usize, order: usize },
}

/// A finite subgroup of GL(n, Z): closed element list in a canonical order,
/// full multiplication table, inverse table, and a word DAG expressing every
/// element as (parent element) * (generator).
#[derive(Clone)]
pub struct MatGroup {
    degree: usize,
    elems: Vec<IntMat>,
    /// Element index of each input generator (deduplicated inputs share one).
    gen_indices: Vec<usize>,
    id_index: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    /// words[e] = Some((parent, gen element index)); None for the identity.
    words: Vec<Option<(u32, u32)>>,
    /// Element indices sorted by word length (parents before children).
    eval_order: Vec<u32>,
    index: HashMap<Vec<BigInt>, usize>,
}

impl MatGroup {
    /// The trivial subgroup of GL(degree, Z).
    pub fn trivial(degree: usize) -> MatGroup {
        Self::close(&[IntMat::identity(degree)], DEFAULT_ELEMENT_CAP).unwrap()
    }

    /// Close a generating set under multiplication. Elements end up in a
    /// canonical order independent of generator order: sorted by the trace
    /// vector of powers (tr g, tr g^2, ..., tr g^ord) and then by entries.
    pub fn close(gens: &[IntMat], cap: usize) -> Result<MatGroup, GroupError> {
        if gens.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        let degree = gens[0].rows();
        for (i, g) in gens.iter().enumerate() {
            if !g.is_square() || g.rows() != degree {
                return Err(GroupError::DegreeMismatch { index: i, expected: degree });
            }
            if det(g).abs() != BigInt::from(1) {
                return Err(GroupError::NonUnimodular { index: i });
            }
        }

        // BFS closure with word tracking.
        let id = IntMat::identity(degree);
        let mut elems: Vec<IntMat> = vec![id.clone()];
        let mut index: HashMap<Vec<BigInt>, usize> = HashMap::new();
        index.insert(id.entries().to_vec(), 0);
        // unique generators
        let mut unique_gens: Vec<usize> = Vec::new(); // element indices
        let mut gen_indices = Vec::with_capacity(gens.len());
        for g in gens {
            let key = g.entries().to_vec();
            let idx = match index.get(&key) {
                Some(&i) => i,
                None => {
                    let i = elems.len();
                    elems.push(g.clone());
                    index.insert(key, i);
                    unique_gens.push(i);
                    i
                }
            };
            gen_indices.push(idx);
        }
        let mut words: Vec<Option<(u32, u32)>> = vec![None; elems.len()];
        for &gi in &unique_gens {
            words[gi] = Some((0, gi as u32));
        }
        let mut queue: Vec<usize> = (0..elems.len()).collect();
        let mut qpos = 0;
        while qpos < queue.len() {
            let e = queue[qpos];
            qpos += 1;
            for &gi in &unique_gens {
                let prod = elems[e].mul(&elems[gi]);
                let key = prod.entries().to_vec();
                if !index.contains_key(&key) {
                    let ni = elems.len();
                    if ni >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(key, ni);
                    elems.push(prod);
                    words.push(Some((e as u32, gi as u32)));
                    queue.push(ni);
                }
            }
        }
        let n = elems.len();

        // Element orders and trace-power sort keys, via matrix powers.
        let mut keys: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::with_capacity(n);
        let mut orders = vec![0u32; n];
        for (i, e) in elems.iter().enumerate() {
            let mut traces = Vec::new();
            let mut pw = e.clone();
            let mut ord = 1u32;
            loop {
                traces.push(pw.trace());
                if pw.is_identity() {
                    break;
                }
                pw = pw.mul(e);
                ord += 1;
            }
            orders[i] = ord;
            keys.push((traces, e.entries().to_vec()));
        }

        // Canonical permutation: perm[new] = old.
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut old_to_new = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            old_to_new[old] = new;
        }

        let elems: Vec<IntMat> = perm.iter().map(|&o| elems[o].clone()).collect();
        let orders: Vec<u32> = perm.iter().map(|&o| orders[o]).collect();
        let words: Vec<Option<(u32, u32)>> = perm
            .iter()
            .map(|&o| {
                words[o].map(|(p, g)| {
                    (old_to_new[p as usize] as u32, old_to_new[g as usize] as u32)
                })
            })
            .collect();
        let gen_indices: Vec<usize> =
            gen_indices.into_iter().map(|i| old_to_new[i]).collect();
        let id_index = old_to_new[0];
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elems.iter().enumerate() {
            index.insert(e.entries().to_vec(), i);
        }

        // Word lengths -> evaluation order (parents precede children).
        let mut word_len = vec![0u32; n];
        let mut eval_order: Vec<u32> = Vec::with_capacity(n);
        {
            // compute lengths by repeated relaxation over the DAG
            let mut remaining: Vec<usize> = (0..n).collect();
            let mut done = vec![false; n];
            while !remaining.is_empty() {
                let mut next = Vec::new();
                for &e in &remaining {
                    match words[e] {
                        None => {
                            done[e] = true;
                            eval_order.push(e as u32);
                        }
                        Some((p, _)) => {
                            if done[p as usize] {
                                word_len[e] = word_len[p as usize] + 1;
                                done[e] = true;
                                eval_order.push(e as u32);
                            } else {
                                next.push(e);
                            }
                        }
                    }
                }
                assert!(next.len() < remaining.len(), "word DAG has a cycle");
                remaining = next;
            }
        }

        // Multiplication table, one column per element along the word DAG:
        // col_e[x] = index(x * e), and col_{p*g}[x] = col_g[col_p[x]].
        let mut table = vec![0u32; n * n];
        let mut gen_cols: HashMap<u32, Vec<u32>> = HashMap::new();
        for &gi in gen_indices.iter() {
            let gi = gi as u32;
            if gen_cols.contains_key(&gi) {
                continue;
            }
            let gmat = &elems[gi as usize];
            let mut col = vec![0u32; n];
            for (x, xmat) in elems.iter().enumerate() {
                let prod = xmat.mul(gmat);
                col[x] = index[prod.entries()] as u32;
            }
            gen_cols.insert(gi, col);
        }
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &e in &eval_order {
            let e = e as usize;
            let col: Vec<u32> = match words[e] {
                None => (0..n as u32).collect(),
                Some((p, g)) => {
                    let gcol = &gen_cols[&g];
                    let pcol = &cols[p as usize];
                    (0..n).map(|x| gcol[pcol[x] as usize]).collect()
                }
            };
            for x in 0..n {
                table[x * n + e] = col[x];
            }
            cols[e] = col;
        }

        let mut inv = vec![u32::MAX; n];
        for x in 0..n {
            for e in 0..n {
                if table[x * n + e] as usize == id_index {
                    inv[x] = e as u32;
                    break;
                }
            }
        }
        debug_assert!(inv.iter().all(|&x| x != u32::MAX));

        Ok(MatGroup {
            degree,
            elems,
            gen_indices,
            id_index,
            table,
            inv,
            orders,
            words,
            eval_order,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[IntMat] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &IntMat {
        &self.elems[i]
    }

    /// Element indices of the original generator list.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_indices
    }

    pub fn index_of(&self, m: &IntMat) -> Option<usize> {
        self.index.get(m.entries()).copied()
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.orders[i] as usize
    }

    /// Evaluate a map defined on the generators across the whole group by
    /// following the word DAG. `gen_images[k]` is the image of the k-th
    /// input generator; `mul` composes images; `id_image` seeds the identity.
    pub fn evaluate_words<T: Clone>(
        &self,
        id_image: T,
        gen_images: &[T],
        mut mul: impl FnMut(&T, &T) -> T,
    ) -> Vec<T> {
        assert_eq!(gen_images.len(), self.gen_indices.len());
        // map generator element index -> provided image (first occurrence)
        let mut img_of: HashMap<u32, &T> = HashMap::new();
        for (k, &gi) in self.gen_indices.iter().enumerate() {
            img_of.entry(gi as u32).or_insert(&gen_images[k]);
        }
        let n = self.order();
        let mut out: Vec<Option<T>> = vec![None; n];
        for &e in &self.eval_order {
            let e = e as usize;
            let val = match self.words[e] {
                None => id_image.clone(),
                Some((p, g)) => {
                    let pi = out[p as usize].as_ref().expect("parent evaluated first");
                    mul(pi, img_of[&g])
                }
            };
            out[e] = Some(val);
        }
        out.into_iter().map(|x| x.unwrap()).collect()
    }
}

impl FinGroup for MatGroup {
    fn order(&self) -> usize {
        self.elems.len()
    }
    fn id(&self) -> usize {
        self.id_index
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elems.len() + b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
    fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }
}

impl std::fmt::Debug for MatGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatGroup(degree {}, order {})", self.degree, self.elems.len())
    }
}
