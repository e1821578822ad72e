//! The hyperoctahedral group B_n of signed permutations of `{±1, …, ±n}`.
//!
//! Elements are stored in window notation `[σ(1), …, σ(n)]`; negative
//! arguments follow from `σ(-i) = -σ(i)`. Generators are the adjacent
//! transpositions `s_1, …, s_{n-1}` and the last-coordinate sign change `s_n`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank for which word length is computed by breadth-first search.
pub const LENGTH_RANK_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignedPermutation {
    window: Vec<i32>,
}

/// Exponents `e` with `σ = s_1^{e_1} ⋯ s_n^{e_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoodCertificate {
    pub bits: Vec<u8>,
}

/// Data of the pairing that cancels a bad element against `partner`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BadCertificate {
    /// Smallest `k >= 2` with `[k-1]` not contained in `σ([k])`.
    pub k: usize,
    /// The unique element of `σ([k-1]) \ [k-2]`.
    pub j: i32,
    /// Reflection exchanging `±j` and `±σ(k)`.
    pub tau: SignedPermutation,
    /// `tau ∘ σ`.
    pub partner: SignedPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Good(GoodCertificate),
    Bad(BadCertificate),
}

impl Classification {
    pub fn is_good(&self) -> bool {
        matches!(self, Classification::Good(_))
    }
}

impl GoodCertificate {
    /// Evaluates the subword `s_1^{e_1} ⋯ s_n^{e_n}` read as successive
    /// moves, `s_1^{e_1}` first: as a function this is `s_n^{e_n} ∘ ⋯ ∘ s_1^{e_1}`.
    ///
    /// With `s_1` applied last instead, `s_1 ∘ s_2 = [2,-1]` would violate
    /// `[1] ⊂ σ([2])`, so only this order matches the subset criterion.
    pub fn word(&self) -> SignedPermutation {
        let n = self.bits.len();
        let mut acc = SignedPermutation::identity(n);
        for (i, &b) in self.bits.iter().enumerate() {
            if b == 1 {
                let s = SignedPermutation::simple(n, i + 1).expect("index in range");
                acc = s.compose(&acc).expect("equal ranks");
            }
        }
        acc
    }

    /// `(-1)^{e_1 + … + e_n}`.
    pub fn sign(&self) -> i64 {
        if self.bits.iter().map(|&b| b as u32).sum::<u32>() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::InvalidWindow("empty window".into()));
        }
        let mut seen = vec![false; n + 1];
        for &x in &window {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidWindow(format!("{window:?} is not a signed permutation")));
            }
            seen[a] = true;
        }
        Ok(Self { window })
    }

    pub fn identity(n: usize) -> Self {
        Self { window: (1..=n as i32).collect() }
    }

    /// The simple reflection `s_i`, `1 <= i <= n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut w = Self::identity(n).window;
        if i < n {
            w.swap(i - 1, i);
        } else {
            w[n - 1] = -w[n - 1];
        }
        Ok(Self { window: w })
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// `σ(i)` for `i ∈ [±n]`.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.window[i.unsigned_abs() as usize - 1];
        if i > 0 {
            v
        } else {
            -v
        }
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        Ok(Self { window: other.window.iter().map(|&x| self.apply(x)).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut w = vec![0; self.rank()];
        for (i, &x) in self.window.iter().enumerate() {
            let pos = i as i32 + 1;
            w[x.unsigned_abs() as usize - 1] = if x > 0 { pos } else { -pos };
        }
        Self { window: w }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    /// Sorted image `σ([m])` of the initial segment `{1, …, m}`.
    pub fn image_of_initial(&self, m: usize) -> Vec<i32> {
        let mut t = self.window[..m].to_vec();
        t.sort_unstable();
        t
    }

    /// Word length in the generators `s_1, …, s_n`.
    pub fn length(&self) -> Result<u32> {
        let n = self.rank();
        if n > LENGTH_RANK_CAP {
            return Err(Error::RankCapExceeded { n, cap: LENGTH_RANK_CAP });
        }
        Ok(length_table(n)[&self.window])
    }

    /// `(-1)^{len(σ)}`, the determinant of the signed permutation matrix.
    pub fn length_parity(&self) -> i64 {
        let n = self.rank();
        let mut sign = 1i64;
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.window[i].unsigned_abs() as usize - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        for &x in &self.window {
            if x < 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Splits B_n into good elements (subwords of `s_1 ⋯ s_n`) and bad ones.
    pub fn classify(&self) -> Classification {
        let n = self.rank();
        for k in 2..=n {
            let image = &self.window[..k];
            let covers = (1..k as i32).all(|x| image.contains(&x));
            if !covers {
                return Classification::Bad(self.bad_certificate(k));
            }
        }
        let bits = (1..=n)
            .map(|i| {
                let fixed = self.image_of_initial(i) == (1..=i as i32).collect::<Vec<_>>();
                u8::from(!fixed)
            })
            .collect();
        Classification::Good(GoodCertificate { bits })
    }

    pub fn is_good(&self) -> bool {
        self.classify().is_good()
    }

    fn bad_certificate(&self, k: usize) -> BadCertificate {
        let j = *self.window[..k - 1]
            .iter()
            .find(|&&x| x < 1 || x > k as i32 - 2)
            .expect("σ([k-1]) has exactly one element outside [k-2]");
        let sk = self.window[k - 1];
        let tau = Self::reflection(self.rank(), j, sk);
        let partner = tau.compose(self).expect("equal ranks");
        BadCertificate { k, j, tau, partner }
    }

    /// The reflection sending `±x` to `±y` and fixing all other letters.
    pub fn reflection(n: usize, x: i32, y: i32) -> Self {
        let mut w = Self::identity(n).window;
        w[x.unsigned_abs() as usize - 1] = x.signum() * y;
        w[y.unsigned_abs() as usize - 1] = y.signum() * x;
        Self { window: w }
    }

    /// All `2^n n!` elements, ordered by underlying permutation then sign mask.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for perm in permutations(n) {
            for mask in 0u32..(1 << n) {
                let window = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                    .collect();
                out.push(Self { window });
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<i32>> {
    fn rec(prefix: &mut Vec<i32>, used: &mut [bool], out: &mut Vec<Vec<i32>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x as i32 + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn length_table(n: usize) -> &'static HashMap<Vec<i32>, u32> {
    static TABLES: [OnceLock<HashMap<Vec<i32>, u32>>; LENGTH_RANK_CAP + 1] =
        [const { OnceLock::new() }; LENGTH_RANK_CAP + 1];
    TABLES[n].get_or_init(|| {
        let gens: Vec<SignedPermutation> =
            (1..=n).map(|i| SignedPermutation::simple(n, i).expect("in range")).collect();
        let mut dist = HashMap::new();
        let start = SignedPermutation::identity(n);
        dist.insert(start.window.clone(), 0);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            let d = dist[&s.window];
            for g in &gens {
                let t = s.compose(g).expect("equal ranks");
                if !dist.contains_key(&t.window) {
                    dist.insert(t.window.clone(), d + 1);
                    queue.push_back(t);
                }
            }
        }
        dist
    })
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(i32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let window = s
            .split(',')
            .map(|p| p.trim().parse::<i32>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(window)
    }
}

impl TryFrom<String> for SignedPermutation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SignedPermutation> for String {
    fn from(p: SignedPermutation) -> String {
        p.to_string()
    }
}
