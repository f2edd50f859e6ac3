//! Built-in group definitions and presentation file handling.
//!
//! The registry covers the families used throughout the test suites
//! (cyclic, elementary abelian, the two nonabelian groups of order p^3,
//! C_{p^2} x C_p, the maximal-class group of order p^4) together with
//! three fixed groups of order 5^7 whose power-commutator data was
//! derived offline from their defining relations and cross-checked
//! against independent coordinate models in the integration tests.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::is_prime;
use crate::pcgroup::{PcGroup, PcPresentation, Word};

mod io;
pub use io::{entry_from_json, entry_to_json, load, save};

/// A fact about a builtin group that the self-test suite recomputes
/// from scratch and compares against the frozen value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedFact {
    Order(u64),
    NilpotencyClass(usize),
    MinimalGenerators(usize),
    /// Invariant factors of the center, largest first.
    CenterInvariants(Vec<u64>),
    Exponent(u64),
}

/// One catalog group: a validated presentation plus descriptive
/// metadata. Equality compares the presentation only; the note and the
/// expected facts are commentary, not part of the group's identity.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    presentation: PcPresentation,
    note: String,
    expected_facts: Vec<ExpectedFact>,
}

impl PartialEq for CatalogEntry {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}

impl Eq for CatalogEntry {}

impl CatalogEntry {
    pub(crate) fn from_parts(
        presentation: PcPresentation,
        note: impl Into<String>,
        expected_facts: Vec<ExpectedFact>,
    ) -> Self {
        CatalogEntry { presentation, note: note.into(), expected_facts }
    }

    pub fn name(&self) -> &str {
        self.presentation.name()
    }

    pub fn p(&self) -> u32 {
        self.presentation.p()
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.presentation
    }

    pub fn note(&self) -> &str {
        &self.note
    }

    pub fn expected_facts(&self) -> &[ExpectedFact] {
        &self.expected_facts
    }

    pub fn group(&self) -> Result<PcGroup> {
        PcGroup::new(self.presentation.clone())
    }

    /// Recompute every expected fact and fail with a descriptive
    /// invariant error on the first mismatch.
    pub fn verify_expected_facts(&self) -> Result<()> {
        let grp = self.group()?;
        for fact in &self.expected_facts {
            match fact {
                ExpectedFact::Order(n) => {
                    check_fact(self.name(), "order", *n, grp.order())?;
                }
                ExpectedFact::NilpotencyClass(c) => {
                    check_fact(self.name(), "nilpotency class", *c, grp.nilpotency_class())?;
                }
                ExpectedFact::MinimalGenerators(d) => {
                    check_fact(self.name(), "minimal generators", *d, grp.minimal_generator_count()?)?;
                }
                ExpectedFact::CenterInvariants(inv) => {
                    let center = grp.center()?;
                    let found = grp.abelian_invariants(&center)?;
                    check_fact(self.name(), "center invariants", inv.clone(), found)?;
                }
                ExpectedFact::Exponent(e) => {
                    check_fact(self.name(), "exponent", *e, grp.exponent(grp.order())?)?;
                }
            }
        }
        Ok(())
    }
}

fn check_fact<T: PartialEq + std::fmt::Debug>(
    name: &str,
    what: &str,
    expected: T,
    found: T,
) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "{name}: expected {what} {expected:?}, computed {found:?}"
        )))
    }
}

/// Registry description of one builtin, for listings.
#[derive(Debug, Clone, Copy)]
pub struct BuiltinSpec {
    pub name: &'static str,
    pub parameter: &'static str,
    pub summary: &'static str,
}

pub fn builtin_specs() -> &'static [BuiltinSpec] {
    &[
        BuiltinSpec {
            name: "cyclic",
            parameter: "order p^n (odd p)",
            summary: "cyclic group given by a power chain g_i^p = g_{i+1}",
        },
        BuiltinSpec {
            name: "elem_abelian",
            parameter: "order p^n (odd p)",
            summary: "elementary abelian group, every relation trivial",
        },
        BuiltinSpec {
            name: "c_p2_x_cp",
            parameter: "odd prime p",
            summary: "abelian group C_{p^2} x C_p of order p^3",
        },
        BuiltinSpec {
            name: "heisenberg",
            parameter: "odd prime p",
            summary: "extraspecial group of order p^3 and exponent p, (C_p x C_p) : C_p",
        },
        BuiltinSpec {
            name: "modular",
            parameter: "odd prime p",
            summary: "nonabelian group C_{p^2} : C_p of order p^3 with a generator of order p^2",
        },
        BuiltinSpec {
            name: "maxclass_p4",
            parameter: "odd prime p",
            summary: "maximal-class group of order p^4 (for p = 3 this is C_3 wr C_3)",
        },
        BuiltinSpec {
            name: "G5_7_1599",
            parameter: "5",
            summary: "first of three class-3 groups of order 5^7 with center C_25 x C_25",
        },
        BuiltinSpec {
            name: "G5_7_1734",
            parameter: "5",
            summary: "second of three class-3 groups of order 5^7 with center C_25 x C_25",
        },
        BuiltinSpec {
            name: "G5_7_1766",
            parameter: "5",
            summary: "third of three class-3 groups of order 5^7 with center C_25 x C_25",
        },
    ]
}

/// Look up a builtin by name. For cyclic and elem_abelian the parameter
/// is the group order p^n; for the family builtins it is the odd prime
/// p; for the fixed order-5^7 groups it must be 5.
pub fn builtin(name: &str, param: u64) -> Result<CatalogEntry> {
    let key = name.to_ascii_lowercase();
    match key.as_str() {
        "cyclic" => cyclic(param),
        "elem_abelian" => elem_abelian(param),
        "c_p2_x_cp" => c_p2_x_cp(prime_param(name, param)?),
        "heisenberg" => heisenberg(prime_param(name, param)?),
        "modular" => modular(prime_param(name, param)?),
        "maxclass_p4" => maxclass_p4(prime_param(name, param)?),
        "g5_7_1599" | "g5_7_1734" | "g5_7_1766" => {
            if param != 5 {
                return Err(Error::Input(format!(
                    "builtin {name} is defined for p = 5 only, got {param}"
                )));
            }
            g5_7(&key)
        }
        _ => Err(Error::Input(format!("unknown builtin group '{name}'"))),
    }
}

/// The fixed list of groups the self-test and fingerprint suites run
/// over: a p = 3 family sample, the same families at p = 5, and the
/// three order-5^7 groups.
pub fn standard_roster() -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (name, param) in [
        ("cyclic", 3),
        ("cyclic", 27),
        ("cyclic", 243),
        ("elem_abelian", 9),
        ("elem_abelian", 243),
        ("c_p2_x_cp", 3),
        ("heisenberg", 3),
        ("modular", 3),
        ("maxclass_p4", 3),
        ("cyclic", 5),
        ("cyclic", 125),
        ("elem_abelian", 25),
        ("c_p2_x_cp", 5),
        ("heisenberg", 5),
        ("modular", 5),
        ("maxclass_p4", 5),
        ("G5_7_1599", 5),
        ("G5_7_1734", 5),
        ("G5_7_1766", 5),
    ] {
        entries.push(builtin(name, param)?);
    }
    Ok(entries)
}

fn prime_param(name: &str, param: u64) -> Result<u32> {
    let p = u32::try_from(param)
        .map_err(|_| Error::Input(format!("parameter {param} for builtin {name} is too large")))?;
    if p == 2 || !is_prime(p) {
        return Err(Error::Input(format!(
            "builtin {name} needs an odd prime parameter, got {param}"
        )));
    }
    Ok(p)
}

/// Split n into (p, k) with n = p^k, p an odd prime.
fn odd_prime_power(name: &str, n: u64) -> Result<(u32, usize)> {
    if n < 3 {
        return Err(Error::Input(format!(
            "builtin {name} needs an odd prime power order, got {n}"
        )));
    }
    let mut p = 3u64;
    while p * p <= n && n % p != 0 {
        p += 2;
    }
    let p = if n % p == 0 { p } else { n };
    let mut rest = n;
    let mut k = 0usize;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 || p == 2 || n % 2 == 0 {
        return Err(Error::Input(format!(
            "builtin {name} needs an odd prime power order, got {n}"
        )));
    }
    Ok((u32::try_from(p).map_err(|_| {
        Error::Input(format!("parameter {n} for builtin {name} is too large"))
    })?, k))
}

fn entry(
    name: String,
    p: u32,
    ngens: usize,
    powers: Vec<Word>,
    commutators: BTreeMap<(usize, usize), Word>,
    note: &str,
    expected_facts: Vec<ExpectedFact>,
) -> Result<CatalogEntry> {
    let pres = PcPresentation::new(name, p, ngens, powers, commutators)?;
    Ok(CatalogEntry::from_parts(pres, note, expected_facts))
}

fn cyclic(order: u64) -> Result<CatalogEntry> {
    let (p, n) = odd_prime_power("cyclic", order)?;
    let mut powers: Vec<Word> = (0..n - 1).map(|i| vec![(i + 1, 1)]).collect();
    powers.push(Vec::new());
    entry(
        format!("cyclic({order})"),
        p,
        n,
        powers,
        BTreeMap::new(),
        "cyclic group as a power chain",
        vec![
            ExpectedFact::Order(order),
            ExpectedFact::NilpotencyClass(1),
            ExpectedFact::MinimalGenerators(1),
            ExpectedFact::CenterInvariants(vec![order]),
            ExpectedFact::Exponent(order),
        ],
    )
}

fn elem_abelian(order: u64) -> Result<CatalogEntry> {
    let (p, n) = odd_prime_power("elem_abelian", order)?;
    entry(
        format!("elem_abelian({order})"),
        p,
        n,
        vec![Vec::new(); n],
        BTreeMap::new(),
        "elementary abelian group",
        vec![
            ExpectedFact::Order(order),
            ExpectedFact::NilpotencyClass(1),
            ExpectedFact::MinimalGenerators(n),
            ExpectedFact::CenterInvariants(vec![u64::from(p); n]),
            ExpectedFact::Exponent(u64::from(p)),
        ],
    )
}

fn c_p2_x_cp(p: u32) -> Result<CatalogEntry> {
    let q = u64::from(p);
    entry(
        format!("c_p2_x_cp({p})"),
        p,
        3,
        vec![vec![(1, 1)], Vec::new(), Vec::new()],
        BTreeMap::new(),
        "direct product of a cyclic group of order p^2 with one of order p",
        vec![
            ExpectedFact::Order(q * q * q),
            ExpectedFact::NilpotencyClass(1),
            ExpectedFact::MinimalGenerators(2),
            ExpectedFact::CenterInvariants(vec![q * q, q]),
            ExpectedFact::Exponent(q * q),
        ],
    )
}

fn heisenberg(p: u32) -> Result<CatalogEntry> {
    let q = u64::from(p);
    let mut comms = BTreeMap::new();
    comms.insert((1, 0), vec![(2, 1)]);
    entry(
        format!("heisenberg({p})"),
        p,
        3,
        vec![Vec::new(); 3],
        comms,
        "extraspecial group of order p^3 and exponent p",
        vec![
            ExpectedFact::Order(q * q * q),
            ExpectedFact::NilpotencyClass(2),
            ExpectedFact::MinimalGenerators(2),
            ExpectedFact::CenterInvariants(vec![q]),
            ExpectedFact::Exponent(q),
        ],
    )
}

fn modular(p: u32) -> Result<CatalogEntry> {
    let q = u64::from(p);
    let mut comms = BTreeMap::new();
    comms.insert((1, 0), vec![(2, 1)]);
    entry(
        format!("modular({p})"),
        p,
        3,
        vec![Vec::new(), vec![(2, 1)], Vec::new()],
        comms,
        "nonabelian group of order p^3 with an element of order p^2",
        vec![
            ExpectedFact::Order(q * q * q),
            ExpectedFact::NilpotencyClass(2),
            ExpectedFact::MinimalGenerators(2),
            ExpectedFact::CenterInvariants(vec![q]),
            ExpectedFact::Exponent(q * q),
        ],
    )
}

fn maxclass_p4(p: u32) -> Result<CatalogEntry> {
    let q = u64::from(p);
    let mut comms = BTreeMap::new();
    comms.insert((1, 0), vec![(2, 1)]);
    comms.insert((2, 0), vec![(3, 1)]);
    entry(
        format!("maxclass_p4({p})"),
        p,
        4,
        vec![Vec::new(); 4],
        comms,
        "maximal-class group of order p^4; an elementary abelian p^3 \
         extended by a single unipotent Jordan block",
        vec![
            ExpectedFact::Order(q * q * q * q),
            ExpectedFact::NilpotencyClass(3),
            ExpectedFact::MinimalGenerators(2),
            ExpectedFact::CenterInvariants(vec![q]),
            ExpectedFact::Exponent(if p == 3 { 9 } else { q }),
        ],
    )
}

/// The three order-5^7 groups. Generators: g1 = a, g2 = b, g3 = c,
/// g4 = [b, a], g5 = a^5, g6 = c^5, g7 = a^25. The three presentations
/// differ only in the values of [[b,a], a] and [[b,a], b].
fn g5_7(key: &str) -> Result<CatalogEntry> {
    let powers: Vec<Word> = vec![
        vec![(4, 1)],
        Vec::new(),
        vec![(5, 1)],
        Vec::new(),
        vec![(6, 1)],
        Vec::new(),
        Vec::new(),
    ];
    let mut comms = BTreeMap::new();
    comms.insert((1, 0), vec![(3, 1)]);
    let name = match key {
        "g5_7_1599" => {
            comms.insert((3, 0), vec![(6, 1)]);
            comms.insert((3, 1), vec![(5, 1)]);
            "G5_7_1599"
        }
        "g5_7_1734" => {
            comms.insert((3, 0), vec![(5, 1)]);
            comms.insert((3, 1), vec![(6, 1)]);
            "G5_7_1734"
        }
        "g5_7_1766" => {
            comms.insert((3, 0), vec![(5, 1)]);
            comms.insert((3, 1), vec![(6, 3)]);
            "G5_7_1766"
        }
        _ => unreachable!("dispatch is exhaustive"),
    };
    entry(
        name.to_string(),
        5,
        7,
        powers,
        comms,
        "class-3 group of order 5^7, one of three sharing every determined invariant",
        vec![
            ExpectedFact::Order(78125),
            ExpectedFact::NilpotencyClass(3),
            ExpectedFact::MinimalGenerators(3),
            ExpectedFact::CenterInvariants(vec![25, 25]),
        ],
    )
}
