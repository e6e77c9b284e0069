//! Construction manifests: structured key=value text describing how a
//! parity-check matrix is built, round-trippable and strict about keys.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Eg,
    Pg,
    Bch,
    RsDispersion,
    LsDispersion,
    Manual,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Eg => "eg",
            Kind::Pg => "pg",
            Kind::Bch => "bch",
            Kind::RsDispersion => "rs-dispersion",
            Kind::LsDispersion => "ls-dispersion",
            Kind::Manual => "manual",
        }
    }

    pub fn parse(s: &str) -> Result<Kind, String> {
        match s {
            "eg" => Ok(Kind::Eg),
            "pg" => Ok(Kind::Pg),
            "bch" => Ok(Kind::Bch),
            "rs-dispersion" => Ok(Kind::RsDispersion),
            "ls-dispersion" => Ok(Kind::LsDispersion),
            "manual" => Ok(Kind::Manual),
            other => Err(format!("unknown kind {other:?}")),
        }
    }
}

/// A construction pipeline: a base matrix plus optional decomposition,
/// masking and splitting parameters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Manifest {
    pub kind: Option<Kind>,
    /// geometry/field parameters
    pub q: Option<u64>,
    pub m: Option<u32>,
    pub class: Option<usize>,
    pub orientation: Option<String>,
    /// cyclic-code parameters (bch)
    pub n: Option<usize>,
    pub p: Option<u64>,
    pub s: Option<u32>,
    pub mext: Option<u32>,
    pub roots: Option<Vec<u64>>,
    /// dispersion parameter
    pub eta: Option<u64>,
    /// decomposition parameters
    pub c: Option<usize>,
    pub b: Option<usize>,
    pub l: Option<usize>,
    pub e: Option<usize>,
    /// type-3 masking sections
    pub mask_sections: Option<Vec<usize>>,
    /// manual input path
    pub input: Option<String>,
}

const KNOWN_KEYS: &[&str] = &[
    "kind", "q", "m", "class", "orientation", "n", "p", "s", "mext", "roots", "eta", "c",
    "b", "l", "e", "mask_sections", "input",
];

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn num(lines: &mut Vec<String>, key: &str, v: Option<u128>) {
            if let Some(v) = v {
                lines.push(format!("{key} = {v}"));
            }
        }
        fn list(lines: &mut Vec<String>, key: &str, v: Option<&[u64]>) {
            if let Some(v) = v {
                let items: Vec<String> = v.iter().map(|r| r.to_string()).collect();
                lines.push(format!("{key} = {}", items.join(",")));
            }
        }
        let mut lines: Vec<String> = Vec::new();
        if let Some(k) = &self.kind {
            lines.push(format!("kind = {}", k.as_str()));
        }
        num(&mut lines, "q", self.q.map(|v| v as u128));
        num(&mut lines, "m", self.m.map(|v| v as u128));
        num(&mut lines, "class", self.class.map(|v| v as u128));
        if let Some(o) = &self.orientation {
            lines.push(format!("orientation = {o}"));
        }
        num(&mut lines, "n", self.n.map(|v| v as u128));
        num(&mut lines, "p", self.p.map(|v| v as u128));
        num(&mut lines, "s", self.s.map(|v| v as u128));
        num(&mut lines, "mext", self.mext.map(|v| v as u128));
        list(&mut lines, "roots", self.roots.as_deref());
        num(&mut lines, "eta", self.eta.map(|v| v as u128));
        num(&mut lines, "c", self.c.map(|v| v as u128));
        num(&mut lines, "b", self.b.map(|v| v as u128));
        num(&mut lines, "l", self.l.map(|v| v as u128));
        num(&mut lines, "e", self.e.map(|v| v as u128));
        let mask_u64: Option<Vec<u64>> = self
            .mask_sections
            .as_ref()
            .map(|v| v.iter().map(|&x| x as u64).collect());
        list(&mut lines, "mask_sections", mask_u64.as_deref());
        if let Some(input) = &self.input {
            lines.push(format!("input = {input}"));
        }
        for line in lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, String> {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("bad manifest line {line:?}"))?;
            let key = k.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("unknown manifest key {key:?}"));
            }
            if map.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(format!("duplicate manifest key {key:?}"));
            }
        }
        let get_num = |key: &str| -> Result<Option<u64>, String> {
            map.get(key)
                .map(|v| v.parse::<u64>().map_err(|_| format!("bad integer for {key:?}")))
                .transpose()
        };
        let get_list = |key: &str| -> Result<Option<Vec<u64>>, String> {
            map.get(key)
                .map(|v| {
                    v.split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| {
                            t.trim()
                                .parse::<u64>()
                                .map_err(|_| format!("bad list entry {t:?} for {key:?}"))
                        })
                        .collect()
                })
                .transpose()
        };
        Ok(Manifest {
            kind: map.get("kind").map(|v| Kind::parse(v)).transpose()?,
            q: get_num("q")?,
            m: get_num("m")?.map(|v| v as u32),
            class: get_num("class")?.map(|v| v as usize),
            orientation: map.get("orientation").cloned(),
            n: get_num("n")?.map(|v| v as usize),
            p: get_num("p")?,
            s: get_num("s")?.map(|v| v as u32),
            mext: get_num("mext")?.map(|v| v as u32),
            roots: get_list("roots")?,
            eta: get_num("eta")?,
            c: get_num("c")?.map(|v| v as usize),
            b: get_num("b")?.map(|v| v as usize),
            l: get_num("l")?.map(|v| v as usize),
            e: get_num("e")?.map(|v| v as usize),
            mask_sections: get_list("mask_sections")?
                .map(|v| v.into_iter().map(|x| x as usize).collect()),
            input: map.get("input").cloned(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = Manifest {
            kind: Some(Kind::Eg),
            q: Some(16),
            m: Some(2),
            class: Some(0),
            orientation: Some("rows".to_string()),
            c: Some(5),
            mask_sections: Some(vec![1, 2]),
            ..Default::default()
        };
        let text = m.to_string();
        let back = Manifest::parse(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(Manifest::parse("kind = eg\nbogus = 1\n").is_err());
        assert!(Manifest::parse("q = 4\nq = 8\n").is_err());
        assert!(Manifest::parse("kind = flurb\n").is_err());
    }
}
