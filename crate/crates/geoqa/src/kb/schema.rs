//! GEO-TR schema: classes, a single subclass axiom, object properties with
//! domain pairs, data properties with ranged literals, and lexicon aliases.
//!
//! The schema file is line oriented:
//!
//! ```text
//! class Sehir
//! subclass Ilce Sehir
//! objprop komsu domain Sehir->Sehir,Bolge->Bolge symmetric
//! objprop konumlanir domain Sehir->Bolge,... inverse konumVar
//! dataprop populasyon domains Sehir,Bolge range int
//! alias il class Sehir
//! ```
//!
//! `#` starts a comment; blank lines are skipped.

use crate::turkish;

use super::term::Iri;
use super::{AxiomKind, KbError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralKind {
    Int,
    Decimal,
    Str,
}

impl LiteralKind {
    pub fn name(&self) -> &'static str {
        match self {
            LiteralKind::Int => "int",
            LiteralKind::Decimal => "decimal",
            LiteralKind::Str => "string",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ObjectPropertyDecl {
    pub name: Iri,
    /// Declared (domain, range) class pairs, in declaration order.
    pub pairs: Vec<(Iri, Iri)>,
    pub symmetric: bool,
    pub inverse_of: Option<Iri>,
}

#[derive(Debug, Clone)]
pub struct DataPropertyDecl {
    pub name: Iri,
    pub domains: Vec<Iri>,
    pub range: LiteralKind,
}

/// A lexicon alias declared in the schema file (`alias il class Sehir`).
#[derive(Debug, Clone)]
pub struct SchemaAlias {
    pub lemma: String,
    pub kind: AxiomKind,
    pub target: Iri,
}

#[derive(Debug, Clone, Default)]
pub struct OntologySchema {
    pub classes: Vec<Iri>,
    /// (child, parent) pairs; the bundled schema holds exactly (Ilce, Sehir).
    pub subclass_pairs: Vec<(Iri, Iri)>,
    pub object_properties: Vec<ObjectPropertyDecl>,
    pub data_properties: Vec<DataPropertyDecl>,
    pub aliases: Vec<SchemaAlias>,
}

impl OntologySchema {
    pub fn has_class(&self, iri: &Iri) -> bool {
        self.classes.contains(iri)
    }

    pub fn object_property(&self, name: &Iri) -> Option<&ObjectPropertyDecl> {
        self.object_properties.iter().find(|p| &p.name == name)
    }

    pub fn data_property(&self, name: &Iri) -> Option<&DataPropertyDecl> {
        self.data_properties.iter().find(|p| &p.name == name)
    }

    /// Direct and transitive superclasses of `class`.
    pub fn superclasses_of(&self, class: &Iri) -> Vec<Iri> {
        let mut out = Vec::new();
        let mut cur = class.clone();
        loop {
            match self
                .subclass_pairs
                .iter()
                .find(|(child, _)| *child == cur)
                .map(|(_, parent)| parent.clone())
            {
                Some(parent) if !out.contains(&parent) => {
                    out.push(parent.clone());
                    cur = parent;
                }
                _ => break,
            }
        }
        out
    }

    /// `class` plus its superclasses.
    pub fn class_and_superclasses(&self, class: &Iri) -> Vec<Iri> {
        let mut v = vec![class.clone()];
        v.extend(self.superclasses_of(class));
        v
    }
}

fn parse_class_ref(sch: &OntologySchema, name: &str, line_no: usize) -> Result<Iri, KbError> {
    let iri = Iri::class(name);
    if sch.has_class(&iri) {
        Ok(iri)
    } else {
        Err(KbError::Parse {
            line: line_no,
            message: format!("undeclared class `{name}`"),
        })
    }
}

/// Parses a schema file. Validates that every class referenced by a
/// property is declared and that `inverse` declarations pair up.
pub fn parse_schema(text: &str) -> Result<OntologySchema, KbError> {
    let mut sch = OntologySchema::default();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        match keyword {
            "class" => match rest.as_slice() {
                [name] => sch.classes.push(Iri::class(name)),
                _ => {
                    return Err(KbError::Parse {
                        line: line_no,
                        message: "expected `class <Name>`".into(),
                    })
                }
            },
            "subclass" => match rest.as_slice() {
                [child, parent] => {
                    let child = parse_class_ref(&sch, child, line_no)?;
                    let parent = parse_class_ref(&sch, parent, line_no)?;
                    sch.subclass_pairs.push((child, parent));
                }
                _ => {
                    return Err(KbError::Parse {
                        line: line_no,
                        message: "expected `subclass <Child> <Parent>`".into(),
                    })
                }
            },
            "objprop" => {
                let (name, mut tail) = match rest.as_slice() {
                    [name, "domain", pairs, tail @ ..] => {
                        let mut decl = ObjectPropertyDecl {
                            name: Iri::ins(name),
                            pairs: Vec::new(),
                            symmetric: false,
                            inverse_of: None,
                        };
                        for pair in pairs.split(',') {
                            let (a, b) = pair.split_once("->").ok_or(KbError::Parse {
                                line: line_no,
                                message: format!("bad domain pair `{pair}`"),
                            })?;
                            decl.pairs.push((
                                parse_class_ref(&sch, a, line_no)?,
                                parse_class_ref(&sch, b, line_no)?,
                            ));
                        }
                        (decl, tail.iter())
                    }
                    _ => {
                        return Err(KbError::Parse {
                            line: line_no,
                            message: "expected `objprop <Name> domain <A>-><B>[,...]`".into(),
                        })
                    }
                };
                let mut decl = name;
                while let Some(&word) = tail.next() {
                    match word {
                        "symmetric" => decl.symmetric = true,
                        "inverse" => {
                            let other = tail.next().ok_or(KbError::Parse {
                                line: line_no,
                                message: "`inverse` needs a property name".into(),
                            })?;
                            decl.inverse_of = Some(Iri::ins(other));
                        }
                        other => {
                            return Err(KbError::Parse {
                                line: line_no,
                                message: format!("unexpected token `{other}`"),
                            })
                        }
                    }
                }
                sch.object_properties.push(decl);
            }
            "dataprop" => match rest.as_slice() {
                [name, "domains", domains, "range", range] => {
                    let range = match *range {
                        "int" => LiteralKind::Int,
                        "decimal" => LiteralKind::Decimal,
                        "string" => LiteralKind::Str,
                        other => {
                            return Err(KbError::Parse {
                                line: line_no,
                                message: format!("unknown range `{other}`"),
                            })
                        }
                    };
                    let domains = domains
                        .split(',')
                        .map(|d| parse_class_ref(&sch, d, line_no))
                        .collect::<Result<Vec<_>, _>>()?;
                    sch.data_properties.push(DataPropertyDecl {
                        name: Iri::ins(name),
                        domains,
                        range,
                    });
                }
                _ => {
                    return Err(KbError::Parse {
                        line: line_no,
                        message: "expected `dataprop <Name> domains <C>,... range <kind>`".into(),
                    })
                }
            },
            "alias" => match rest.as_slice() {
                [lemma, kind, target] => {
                    let (kind, target) = match *kind {
                        "class" => (
                            AxiomKind::Class,
                            parse_class_ref(&sch, target, line_no)?,
                        ),
                        "dataprop" => (AxiomKind::DataProperty, Iri::ins(target)),
                        "objprop" => (AxiomKind::ObjectProperty, Iri::ins(target)),
                        "individual" => (AxiomKind::Individual, Iri::ins(target)),
                        other => {
                            return Err(KbError::Parse {
                                line: line_no,
                                message: format!("unknown alias kind `{other}`"),
                            })
                        }
                    };
                    sch.aliases.push(SchemaAlias {
                        lemma: turkish::fold(lemma),
                        kind,
                        target,
                    });
                }
                _ => {
                    return Err(KbError::Parse {
                        line: line_no,
                        message: "expected `alias <lemma> <kind> <Name>`".into(),
                    })
                }
            },
            other => {
                return Err(KbError::Parse {
                    line: line_no,
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
    }

    if sch.classes.is_empty() {
        return Err(KbError::Parse {
            line: 0,
            message: "no classes declared".into(),
        });
    }

    // Alias targets for properties must exist.
    for alias in &sch.aliases {
        let ok = match alias.kind {
            AxiomKind::Class => sch.has_class(&alias.target),
            AxiomKind::DataProperty => sch.data_property(&alias.target).is_some(),
            AxiomKind::ObjectProperty => sch.object_property(&alias.target).is_some(),
            AxiomKind::Individual => true, // resolved when instances load
        };
        if !ok {
            return Err(KbError::Parse {
                line: 0,
                message: format!("alias `{}` points at undeclared `{}`", alias.lemma, alias.target),
            });
        }
    }

    // Inverse declarations must pair up.
    for prop in &sch.object_properties {
        if let Some(inv) = &prop.inverse_of {
            let other = sch.object_property(inv).ok_or_else(|| KbError::Parse {
                line: 0,
                message: format!("`{}` declares unknown inverse `{}`", prop.name, inv),
            })?;
            if other.inverse_of.as_ref() != Some(&prop.name) {
                return Err(KbError::Parse {
                    line: 0,
                    message: format!(
                        "inverse declared on only one side: `{}` -> `{}`",
                        prop.name, inv
                    ),
                });
            }
        }
    }

    Ok(sch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources;

    #[test]
    fn bundled_schema_has_the_eleven_classes() {
        let sch = parse_schema(resources::SCHEMA).unwrap();
        let names: Vec<&str> = sch.classes.iter().map(|c| c.local.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(
            sorted,
            ["Ada", "Bogaz", "Bolge", "Dag", "Deniz", "Gol", "Ilce", "Nehir", "Ova", "Sehir", "Ulke"]
        );
        assert_eq!(sch.subclass_pairs, vec![(Iri::class("Ilce"), Iri::class("Sehir"))]);
    }

    #[test]
    fn bundled_schema_object_properties() {
        let sch = parse_schema(resources::SCHEMA).unwrap();
        let names: Vec<&str> = sch
            .object_properties
            .iter()
            .map(|p| p.name.local.as_str())
            .collect();
        assert_eq!(names, ["konumlanir", "konumVar", "komsu"]);
        let konumlanir = sch.object_property(&Iri::ins("konumlanir")).unwrap();
        assert_eq!(konumlanir.inverse_of, Some(Iri::ins("konumVar")));
        assert!(!konumlanir.symmetric);
        assert!(sch.object_property(&Iri::ins("komsu")).unwrap().symmetric);
    }

    #[test]
    fn bundled_schema_data_properties() {
        let sch = parse_schema(resources::SCHEMA).unwrap();
        let mut names: Vec<&str> = sch
            .data_properties
            .iter()
            .map(|p| p.name.local.as_str())
            .collect();
        names.sort_unstable();
        assert_eq!(
            names,
            [
                "baskent",
                "bitkiOrtusu",
                "derinlik",
                "enlemBoylam",
                "iklim",
                "ortYagis",
                "populasyon",
                "sicaklik",
                "tuzluluk",
                "uzunluk",
                "yukseklik",
                "yuzolcumu"
            ]
        );
        let populasyon = sch.data_property(&Iri::ins("populasyon")).unwrap();
        assert_eq!(populasyon.range, LiteralKind::Int);
        let enlem = sch.data_property(&Iri::ins("enlemBoylam")).unwrap();
        assert_eq!(enlem.range, LiteralKind::Str);
    }

    #[test]
    fn empty_file_is_an_error() {
        let err = parse_schema("").unwrap_err();
        assert!(err.to_string().contains("no classes declared"));
    }

    #[test]
    fn undeclared_domain_class_is_an_error() {
        let err = parse_schema("class A\nobjprop p domain A->B\n").unwrap_err();
        assert!(err.to_string().contains("undeclared class `B`"));
    }

    #[test]
    fn one_sided_inverse_is_an_error() {
        let text = "class A\nobjprop p domain A->A inverse q\nobjprop q domain A->A\n";
        let err = parse_schema(text).unwrap_err();
        assert!(err.to_string().contains("only one side"));
    }
}
