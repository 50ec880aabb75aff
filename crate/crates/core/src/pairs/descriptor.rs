use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Root-system type of the larger member, as in the transfer tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::C => "C",
            Family::D => "D",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// A classical real group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RealGroup {
    /// `Sp(2n,R)`.
    Sp { n: usize },
    /// `O(p,q)`.
    O { p: usize, q: usize },
    /// `U(p,q)`.
    U { p: usize, q: usize },
    /// Quaternionic `Sp(p,q)`.
    SpQ { p: usize, q: usize },
    /// `O*(2n)`.
    OStar { n: usize },
}

impl RealGroup {
    pub fn is_compact(&self) -> bool {
        match *self {
            RealGroup::Sp { .. } | RealGroup::OStar { .. } => false,
            RealGroup::O { p, q } | RealGroup::U { p, q } | RealGroup::SpQ { p, q } => p == 0 || q == 0,
        }
    }

    /// Complex dimension of the Lie algebra.
    pub fn lie_dim(&self) -> usize {
        match *self {
            RealGroup::Sp { n } => n * (2 * n + 1),
            RealGroup::O { p, q } => (p + q) * (p + q).saturating_sub(1) / 2,
            RealGroup::U { p, q } => (p + q) * (p + q),
            RealGroup::SpQ { p, q } => (p + q) * (2 * (p + q) + 1),
            RealGroup::OStar { n } => n * (2 * n - 1),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            RealGroup::Sp { .. } => "sp",
            RealGroup::O { .. } => "o",
            RealGroup::U { .. } => "u",
            RealGroup::SpQ { .. } => "sp",
            RealGroup::OStar { .. } => "ostar",
        }
    }

    fn size(&self) -> usize {
        match *self {
            RealGroup::Sp { n } | RealGroup::OStar { n } => n,
            RealGroup::O { p, q } | RealGroup::U { p, q } | RealGroup::SpQ { p, q } => p + q,
        }
    }

    /// Descriptor fragment, e.g. `sp(2n=4)`.
    pub fn descriptor(&self) -> String {
        match *self {
            RealGroup::Sp { n } => format!("sp(2n={})", 2 * n),
            RealGroup::OStar { n } => format!("ostar(2n={})", 2 * n),
            RealGroup::O { p, q } | RealGroup::U { p, q } | RealGroup::SpQ { p, q } => {
                format!("{}(p={p},q={q})", self.name())
            }
        }
    }
}

impl fmt::Display for RealGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RealGroup::Sp { n } => write!(f, "Sp({},R)", 2 * n),
            RealGroup::O { p, q } => write!(f, "O({p},{q})"),
            RealGroup::U { p, q } => write!(f, "U({p},{q})"),
            RealGroup::SpQ { p, q } => write!(f, "Sp({p},{q})"),
            RealGroup::OStar { n } => write!(f, "O*({})", 2 * n),
        }
    }
}

/// A real reductive dual pair `(G, G′)`; `G′ = groups[1]` is the smaller member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualPairDescriptor {
    pub family: Family,
    pub groups: [RealGroup; 2],
}

impl DualPairDescriptor {
    pub fn new(family: Family, g: RealGroup, g_prime: RealGroup) -> Result<Self> {
        let d = DualPairDescriptor { family, groups: [g, g_prime] };
        d.validate()?;
        Ok(d)
    }

    pub fn sp_o(n: usize, p: usize, q: usize) -> Result<Self> {
        Self::new(Family::C, RealGroup::Sp { n }, RealGroup::O { p, q })
    }

    pub fn u_u(p: usize, q: usize, r: usize, s: usize) -> Result<Self> {
        Self::new(Family::A, RealGroup::U { p, q }, RealGroup::U { p: r, q: s })
    }

    fn validate(&self) -> Result<()> {
        use RealGroup::*;
        let bad = |why: &str| Err(Error::InvalidDescriptor(format!("{self}: {why}")));
        let fits = matches!(
            (self.family, self.groups[0], self.groups[1]),
            (Family::A, U { .. }, U { .. })
                | (Family::C, Sp { .. }, O { .. })
                | (Family::C, SpQ { .. }, OStar { .. })
                | (Family::D, OStar { .. }, SpQ { .. })
                | (Family::D, O { .. }, Sp { .. })
        );
        if !fits {
            return bad("groups do not form a dual pair of this family");
        }
        if self.groups.iter().any(|g| g.size() == 0) {
            return bad("sizes must be positive");
        }
        Ok(())
    }

    /// Number of Fock variables, i.e. half the dimension of `W`.
    pub fn fock_vars(&self) -> usize {
        use RealGroup::*;
        match (self.groups[0], self.groups[1]) {
            (Sp { n }, O { p, q }) | (O { p, q }, Sp { n }) => n * (p + q),
            (U { p, q }, U { p: r, q: s }) => (p + q) * (r + s),
            (SpQ { p, q }, OStar { n }) | (OStar { n }, SpQ { p, q }) => 2 * n * (p + q),
            _ => unreachable!("validated"),
        }
    }

    /// Whether the metaplectic cover of each member is non-split, i.e. its
    /// K-types carry half-integral central shifts.
    pub fn cover_flags(&self) -> [bool; 2] {
        use RealGroup::*;
        match (self.groups[0], self.groups[1]) {
            (Sp { .. }, O { p, q }) => [(p + q) % 2 == 1, false],
            (O { p, q }, Sp { .. }) => [false, (p + q) % 2 == 1],
            (U { p, q }, U { p: r, q: s }) => [(r + s) % 2 == 1, (p + q) % 2 == 1],
            _ => [false, false],
        }
    }

    pub fn swapped_groups(&self) -> [RealGroup; 2] {
        [self.groups[1], self.groups[0]]
    }
}

impl fmt::Display for DualPairDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}/{}", self.family, self.groups[0].descriptor(), self.groups[1].descriptor())
    }
}

fn parse_group(text: &str) -> Result<RealGroup> {
    let err = |why: String| Error::Parse(format!("group {text:?}: {why}"));
    let text = text.trim();
    let open = text.find('(').ok_or_else(|| err("missing '('".into()))?;
    let inner = text[open + 1..].strip_suffix(')').ok_or_else(|| err("missing ')'".into()))?;
    let name = text[..open].trim().to_ascii_lowercase();
    let mut args = Vec::new();
    for piece in inner.split(',') {
        let (key, value) = match piece.split_once('=') {
            Some((k, v)) => (Some(k.trim()), v.trim()),
            None => (None, piece.trim()),
        };
        let v: usize = value.parse().map_err(|_| err(format!("bad number {value:?}")))?;
        args.push((key, v));
    }
    let key_ok = |got: Option<&str>, want: &[&str]| got.is_none_or(|k| want.contains(&k));
    let half = |(key, v): (Option<&str>, usize)| -> Result<usize> {
        match key {
            Some("n") => Ok(v),
            None | Some("2n") if v % 2 == 0 => Ok(v / 2),
            _ => Err(err(format!("expected an even 2n or n=, got {v}"))),
        }
    };
    let pq = |args: &[(Option<&str>, usize)]| -> Result<(usize, usize)> {
        match args {
            [(k, p)] if key_ok(*k, &["p", "n", "m"]) => Ok((*p, 0)),
            [(k1, p), (k2, q)] if key_ok(*k1, &["p"]) && key_ok(*k2, &["q"]) => Ok((*p, *q)),
            _ => Err(err("expected (p) or (p,q)".into())),
        }
    };
    match (name.as_str(), args.len()) {
        ("sp", 1) => Ok(RealGroup::Sp { n: half(args[0])? }),
        ("sp", 2) => pq(&args).map(|(p, q)| RealGroup::SpQ { p, q }),
        ("o", _) => pq(&args).map(|(p, q)| RealGroup::O { p, q }),
        ("u", _) => pq(&args).map(|(p, q)| RealGroup::U { p, q }),
        ("ostar", 1) => Ok(RealGroup::OStar { n: half(args[0])? }),
        _ => Err(err(format!("unknown group {name:?} with {} arguments", args.len()))),
    }
}

impl FromStr for DualPairDescriptor {
    type Err = Error;

    /// Parses `FAMILY:group(args)/group(args)`. `sp` with one argument is
    /// `Sp(2n,R)` (the argument is `2n`, or `n=`), with two it is the
    /// quaternionic `Sp(p,q)`; `o(m)` and `u(m)` mean `(m,0)`.
    fn from_str(s: &str) -> Result<Self> {
        let (fam, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("{s:?}: missing ':'")))?;
        let family: Family = fam.parse()?;
        let (g, h) = rest.split_once(")/").ok_or_else(|| Error::Parse(format!("{s:?}: missing '/'")))?;
        let g = parse_group(&format!("{g})"))?;
        let h = parse_group(h)?;
        DualPairDescriptor::new(family, g, h)
    }
}

impl Serialize for DualPairDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DualPairDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_forms() {
        let d: DualPairDescriptor = "C:sp(2n=4)/o(p=1,q=1)".parse().unwrap();
        assert_eq!(d.groups, [RealGroup::Sp { n: 2 }, RealGroup::O { p: 1, q: 1 }]);
        assert_eq!(d.fock_vars(), 4);
        let d: DualPairDescriptor = "C:sp(2)/o(1,0)".parse().unwrap();
        assert_eq!(d.groups, [RealGroup::Sp { n: 1 }, RealGroup::O { p: 1, q: 0 }]);
        let d: DualPairDescriptor = "A:u(1,1)/u(1)".parse().unwrap();
        assert_eq!(d.groups, [RealGroup::U { p: 1, q: 1 }, RealGroup::U { p: 1, q: 0 }]);
        let d: DualPairDescriptor = "D:o(3,2)/sp(n=1)".parse().unwrap();
        assert_eq!(d.groups[1], RealGroup::Sp { n: 1 });
        let d: DualPairDescriptor = "D:ostar(8)/sp(1,0)".parse().unwrap();
        assert_eq!(d.groups, [RealGroup::OStar { n: 4 }, RealGroup::SpQ { p: 1, q: 0 }]);
    }

    #[test]
    fn display_round_trips() {
        for s in ["C:sp(2n=4)/o(p=1,q=1)", "A:u(p=2,q=2)/u(p=1,q=0)", "C:sp(p=1,q=1)/ostar(2n=2)"] {
            let d: DualPairDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
            let json = serde_json::to_string(&d).unwrap();
            assert_eq!(serde_json::from_str::<DualPairDescriptor>(&json).unwrap(), d);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        for s in ["C:sp(3)/o(1)", "A:sp(2)/o(1)", "C sp(2)/o(1)", "C:sp(2)o(1)", "C:sp(2)/o(0,0)", "C:sp(2)/o(x)"] {
            assert!(s.parse::<DualPairDescriptor>().is_err(), "{s}");
        }
    }

    #[test]
    fn cover_flags_follow_parity() {
        assert_eq!(DualPairDescriptor::sp_o(1, 1, 0).unwrap().cover_flags(), [true, false]);
        assert_eq!(DualPairDescriptor::sp_o(1, 2, 0).unwrap().cover_flags(), [false, false]);
        assert_eq!(DualPairDescriptor::u_u(1, 1, 1, 0).unwrap().cover_flags(), [true, false]);
    }
}
