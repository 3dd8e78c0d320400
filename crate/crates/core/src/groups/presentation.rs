use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the free group: `i` stands for generator `i` (1-based), `-i` for
/// its inverse.
pub type Word = Vec<i32>;

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

pub fn concat(a: &[i32], b: &[i32]) -> Word {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    free_reduce(&v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Word>,
}

impl GroupPresentation {
    /// Relators are freely reduced on the way in.
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for w in &relators {
            if let Some(&x) = w
                .iter()
                .find(|&&x| x == 0 || x.unsigned_abs() as usize > generators)
            {
                return Err(Error::InvalidInput(format!(
                    "letter {x} out of range for {generators} generators"
                )));
            }
        }
        let relators = relators
            .iter()
            .map(|w| free_reduce(w))
            .filter(|w| !w.is_empty())
            .collect();
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Text format `gens: n; rel: a b A B; rel: ...`. Lowercase letters are
    /// generators (`a` = 1), uppercase their inverses; spaces are optional and
    /// several relators may also be separated by commas.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut gens = None;
        let mut rels = Vec::new();
        for part in text.split([';', '\n']) {
            let part = part.trim();
            if part.is_empty() || part.starts_with('#') {
                continue;
            }
            let (key, value) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{part}`")))?;
            match key.trim() {
                "gens" | "generators" => {
                    gens = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad generator count `{value}`")))?,
                    );
                }
                "rel" | "rels" | "relator" | "relators" => {
                    for w in value.split(',') {
                        let mut word = Vec::new();
                        for c in w.chars().filter(|c| !c.is_whitespace()) {
                            if !c.is_ascii_alphabetic() {
                                return Err(Error::Parse(format!("bad letter `{c}` in relator")));
                            }
                            let i = (c.to_ascii_lowercase() as u8 - b'a') as i32 + 1;
                            word.push(if c.is_ascii_uppercase() { -i } else { i });
                        }
                        rels.push(word);
                    }
                }
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse("missing `gens:`".into()))?;
        if gens > 26 {
            return Err(Error::Parse(
                "the text format has at most 26 generators".into(),
            ));
        }
        GroupPresentation::new(gens, rels)
    }

    /// JSON `{"generators": n, "relators": [[1, 2, -1], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            generators: usize,
            relators: Vec<Word>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        GroupPresentation::new(raw.generators, raw.relators)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Presentation of the complement of the closure of a braid on `strands`
    /// strands; `sigma_i^{+-1}` is written `+-i`. The relators `beta(x_i) x_i^-1`
    /// are of Wirtinger type.
    pub fn braid_closure(strands: usize, braid: &[i32]) -> Result<Self> {
        if let Some(&s) = braid
            .iter()
            .find(|&&s| s == 0 || s.unsigned_abs() as usize >= strands)
        {
            return Err(Error::InvalidInput(format!(
                "braid letter {s} out of range for {strands} strands"
            )));
        }
        let mut img: Vec<Word> = (1..=strands as i32).map(|i| vec![i]).collect();
        for &s in braid {
            let i = s.unsigned_abs() as i32;
            // Artin action on the generator words
            let subst = |x: i32| -> Word {
                let (g, inv) = (x.abs(), x < 0);
                let w = if s > 0 {
                    if g == i {
                        vec![i, i + 1, -i]
                    } else if g == i + 1 {
                        vec![i]
                    } else {
                        vec![g]
                    }
                } else if g == i {
                    vec![i + 1]
                } else if g == i + 1 {
                    vec![-(i + 1), i, i + 1]
                } else {
                    vec![g]
                };
                if inv {
                    inverse(&w)
                } else {
                    w
                }
            };
            img = img
                .iter()
                .map(|w| free_reduce(&w.iter().flat_map(|&x| subst(x)).collect::<Vec<_>>()))
                .collect();
        }
        let rels = img
            .iter()
            .enumerate()
            .map(|(k, w)| concat(w, &[-(k as i32 + 1)]))
            .collect();
        GroupPresentation::new(strands, rels)
    }

    /// `<a, b | aba = bab>`
    pub fn trefoil() -> Self {
        GroupPresentation::parse_text("gens: 2; rel: abaBAB").unwrap()
    }

    /// Two-bridge presentation `<a, b | a w = w b>`, `w = b a^-1 b^-1 a`.
    pub fn figure_eight() -> Self {
        GroupPresentation::parse_text("gens: 2; rel: a bABa B AbaB").unwrap()
    }

    pub fn unknot() -> Self {
        GroupPresentation::new(1, Vec::new()).unwrap()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = |x: i32| {
            let c = (b'a' + (x.unsigned_abs() - 1) as u8) as char;
            if x < 0 {
                c.to_ascii_uppercase()
            } else {
                c
            }
        };
        write!(f, "gens: {}", self.generators)?;
        for r in &self.relators {
            if self.generators <= 26 {
                write!(
                    f,
                    "; rel: {}",
                    r.iter().map(|&x| letter(x)).collect::<String>()
                )?;
            } else {
                write!(f, "; rel: {r:?}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        let p = GroupPresentation::parse_text("gens: 2; rel: a b a B A B").unwrap();
        assert_eq!(p, GroupPresentation::trefoil());
        assert_eq!(p.relators()[0], vec![1, 2, 1, -2, -1, -2]);
        assert_eq!(GroupPresentation::parse_text(&p.to_string()).unwrap(), p);
        assert_eq!(GroupPresentation::from_json(&p.to_json()).unwrap(), p);
        let q = GroupPresentation::parse_text("gens: 1; rel: aA").unwrap();
        assert!(q.relators().is_empty());
        assert!(GroupPresentation::parse_text("gens: 1; rel: b").is_err());
        assert!(GroupPresentation::parse_text("rel: a").is_err());
    }

    #[test]
    fn reduction() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(concat(&[1, 2], &[-2, 1]), vec![1, 1]);
    }

    #[test]
    fn braid_closures() {
        let p = GroupPresentation::braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(p.generators(), 2);
        assert_eq!(p.relators().len(), 2);
        assert!(GroupPresentation::braid_closure(2, &[2]).is_err());
    }
}
