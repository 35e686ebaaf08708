/// Occupation counts of odd block sizes: `counts[i]` blocks of size `2i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPartitionType {
    pub counts: Vec<u32>,
}

impl OddPartitionType {
    /// Number of blocks.
    pub fn parts(&self) -> usize {
        self.counts.iter().map(|&b| b as usize).sum()
    }

    /// Number of elements partitioned.
    pub fn size(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, &b)| (2 * i + 1) * b as usize).sum()
    }

    /// `Σ i·b_i`, the genus lost when the blocks are contracted.
    pub fn genus_drop(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, &b)| i * b as usize).sum()
    }

    /// All types partitioning an `n`-set into exactly `parts` odd blocks.
    pub fn enumerate(n: usize, parts: usize) -> Vec<OddPartitionType> {
        fn go(i: usize, n_left: usize, parts_left: usize, cur: &mut Vec<u32>, out: &mut Vec<OddPartitionType>) {
            let size = 2 * i + 1;
            if parts_left == 0 {
                if n_left == 0 {
                    let mut counts = cur.clone();
                    while counts.last() == Some(&0) {
                        counts.pop();
                    }
                    out.push(OddPartitionType { counts });
                }
                return;
            }
            if size > n_left {
                return;
            }
            for b in 0..=parts_left.min(n_left / size) {
                cur.push(b as u32);
                go(i + 1, n_left - b * size, parts_left - b, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, parts, &mut Vec::new(), &mut out);
        out
    }

    pub fn of_blocks(blocks: &[Vec<usize>]) -> Option<OddPartitionType> {
        let mut counts = Vec::new();
        for b in blocks {
            if b.len() % 2 == 0 {
                return None;
            }
            let i = b.len() / 2;
            if counts.len() <= i {
                counts.resize(i + 1, 0);
            }
            counts[i] += 1;
        }
        Some(OddPartitionType { counts })
    }
}

/// Calls `f` on every set partition of `{0, …, n−1}`, via restricted growth strings.
pub fn visit_set_partitions<F: FnMut(&[Vec<usize>])>(n: usize, mut f: F) {
    fn go<F: FnMut(&[Vec<usize>])>(k: usize, n: usize, blocks: &mut Vec<Vec<usize>>, f: &mut F) {
        if k == n {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(k);
            go(k + 1, n, blocks, f);
            blocks[b].pop();
        }
        blocks.push(vec![k]);
        go(k + 1, n, blocks, f);
        blocks.pop();
    }
    go(0, n, &mut Vec::new(), &mut f);
}

pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    visit_set_partitions(n, |p| out.push(p.to_vec()));
    out
}

/// Set partitions of `{0, …, n−1}` whose blocks all have odd size. The block
/// holding the smallest free element is chosen first, so each appears once.
pub fn odd_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(free: &[usize], blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(blocks.clone());
            return;
        };
        // subsets of `rest` with even size join `first`
        let m = rest.len();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let mut block = vec![first];
            let mut remaining = Vec::with_capacity(m);
            for (j, &x) in rest.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    block.push(x);
                } else {
                    remaining.push(x);
                }
            }
            blocks.push(block);
            go(&remaining, blocks, out);
            blocks.pop();
        }
    }
    let free: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    go(&free, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), b);
        }
    }

    #[test]
    fn odd_partitions_agree_with_filter() {
        for n in 0..=8 {
            let filtered = set_partitions(n)
                .into_iter()
                .filter(|p| p.iter().all(|b| b.len() % 2 == 1))
                .count();
            assert_eq!(odd_set_partitions(n).len(), filtered, "n = {n}");
        }
    }
}
