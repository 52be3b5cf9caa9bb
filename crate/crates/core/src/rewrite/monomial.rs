use std::cmp::Ordering;
use std::fmt;

/// A letter of a word over the generators of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `X_{i+1}` (zero-based)
    X(usize),
    /// the homogenizing variable
    Z,
}

/// PBW monomial `Z^a X_1^e_1 ... X_n^e_n`.
///
/// Ordered by total degree, then lexicographically on the written word
/// (`Z` sorts after every `X`), which is also the display order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    z: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { z: 0, exps: vec![0; n] }
    }

    pub fn new(z: u32, exps: Vec<u32>) -> Self {
        Monomial { z, exps }
    }

    /// Monomial of an ordered (non-decreasing) list of `X` indices.
    pub(crate) fn from_sorted(n: usize, z: u32, xs: &[u16]) -> Self {
        let mut exps = vec![0; n];
        for &x in xs {
            exps[x as usize] += 1;
        }
        Monomial { z, exps }
    }

    pub fn z_exp(&self) -> u32 {
        self.z
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.z + self.exps.iter().sum::<u32>()
    }

    pub fn x_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// The PBW word, `Z`s first.
    pub fn word(&self) -> Vec<Letter> {
        let mut w = vec![Letter::Z; self.z as usize];
        for (i, &e) in self.exps.iter().enumerate() {
            w.extend(std::iter::repeat_n(Letter::X(i), e as usize));
        }
        w
    }

    pub(crate) fn x_word(&self) -> Vec<u16> {
        let mut w = Vec::with_capacity(self.x_degree() as usize);
        for (i, &e) in self.exps.iter().enumerate() {
            w.extend(std::iter::repeat_n(i as u16, e as usize));
        }
        w
    }

    pub(crate) fn with_z(&self, z: u32) -> Monomial {
        Monomial { z, exps: self.exps.clone() }
    }

    fn order_key(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.exps.len();
        std::iter::repeat_n(n, self.z as usize)
            .chain(self.exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)))
    }

    /// Writes the monomial with the given generator names, e.g. `Z^2*X*D^3`.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        let mut push = |name: &str, e: u32| match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        };
        push("Z", self.z);
        for (name, &e) in names.iter().zip(&self.exps) {
            push(name, e);
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.order_key().cmp(other.order_key()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.exps.len()).map(|i| format!("X{i}")).collect();
        f.write_str(&self.render(&names))
    }
}
