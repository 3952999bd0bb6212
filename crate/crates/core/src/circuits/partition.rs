use std::fmt;

use crate::error::{Error, Result};

/// Assignment of qubits to disjoint clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cluster_of: Vec<usize>,
    clusters: Vec<Vec<usize>>,
}

impl Partition {
    /// Build from explicit clusters. Qubits must cover `0..n` exactly once.
    pub fn new(clusters: Vec<Vec<usize>>) -> Result<Self> {
        if clusters.is_empty() {
            return Err(Error::InvalidPartition("no clusters".into()));
        }
        let n: usize = clusters.iter().map(Vec::len).sum();
        let mut cluster_of = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(clusters.len());
        for (id, mut qubits) in clusters.into_iter().enumerate() {
            if qubits.is_empty() {
                return Err(Error::InvalidPartition(format!("cluster {id} is empty")));
            }
            qubits.sort_unstable();
            for &q in &qubits {
                if q >= n {
                    return Err(Error::InvalidPartition(format!(
                        "qubit {q} out of range; clusters cover {n} qubits"
                    )));
                }
                if cluster_of[q] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("qubit {q} assigned twice")));
                }
                cluster_of[q] = id;
            }
            sorted.push(qubits);
        }
        Ok(Self {
            cluster_of,
            clusters: sorted,
        })
    }

    /// Every qubit in its own cluster.
    pub fn singletons(n_qubits: usize) -> Result<Self> {
        Self::new((0..n_qubits).map(|q| vec![q]).collect())
    }

    /// Parse `0-2;3-5` style specifications: clusters separated by `;`,
    /// each a comma-separated list of indices or inclusive ranges.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = |m: String| Error::Parse { line: 0, message: m };
        let mut clusters = Vec::new();
        for part in spec.split(';') {
            let part = part.trim();
            if part.is_empty() {
                return Err(bad(format!("empty cluster in '{spec}'")));
            }
            let mut qubits = Vec::new();
            for item in part.split(',') {
                let item = item.trim();
                if let Some((a, b)) = item.split_once('-') {
                    let a: usize = a.trim().parse().map_err(|_| bad(format!("bad range '{item}'")))?;
                    let b: usize = b.trim().parse().map_err(|_| bad(format!("bad range '{item}'")))?;
                    if b < a {
                        return Err(bad(format!("descending range '{item}'")));
                    }
                    qubits.extend(a..=b);
                } else {
                    qubits.push(item.parse().map_err(|_| bad(format!("bad qubit index '{item}'")))?);
                }
            }
            clusters.push(qubits);
        }
        Self::new(clusters)
    }

    pub fn n_qubits(&self) -> usize {
        self.cluster_of.len()
    }

    pub fn n_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn cluster_of(&self, qubit: usize) -> usize {
        self.cluster_of[qubit]
    }

    /// Sorted qubits of cluster `id`; local bit `m` of a cluster state is `cluster(id)[m]`.
    pub fn cluster(&self, id: usize) -> &[usize] {
        &self.clusters[id]
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn cluster_mask(&self, id: usize) -> u64 {
        self.clusters[id].iter().fold(0, |m, q| m | 1u64 << q)
    }

    /// Number of distinct clusters touched by the qubits in `mask`.
    pub fn clusters_touched(&self, mask: u64) -> usize {
        (0..self.n_clusters()).filter(|&j| self.cluster_mask(j) & mask != 0).count()
    }

    /// Canonical spec string, e.g. `0-2;3,5`.
    pub fn spec(&self) -> String {
        self.clusters
            .iter()
            .map(|c| {
                let mut parts: Vec<String> = Vec::new();
                let mut i = 0;
                while i < c.len() {
                    let mut j = i;
                    while j + 1 < c.len() && c[j + 1] == c[j] + 1 {
                        j += 1;
                    }
                    parts.push(if j > i { format!("{}-{}", c[i], c[j]) } else { c[i].to_string() });
                    i = j + 1;
                }
                parts.join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}
