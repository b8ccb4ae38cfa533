//! Record formats: point configuration files, generator and ruling
//! listings, and streamed relation files.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::picard::{DivisorClass, Generator};
use crate::plane::{PlaneForm, PointConfiguration};
use crate::relations::RelationSet;
use crate::rulings::Monomial;

/// `{field: "Q" | "Fp:<p>", r, points: [[x0, x1, x2], ...]}` with exact
/// literals as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFile {
    pub field: String,
    pub r: usize,
    pub points: Vec<[String; 3]>,
}

impl PointFile {
    pub fn of<F: Field>(cfg: &PointConfiguration<F>) -> Self {
        let f = cfg.field();
        PointFile {
            field: f.spec().to_string(),
            r: cfg.r(),
            points: cfg.points().iter().map(|p| p.clone().map(|x| f.format(&x))).collect(),
        }
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        self.field.parse()
    }

    /// Parses the coordinates over `field`, which must match the file's field.
    pub fn configuration<F: Field>(&self, field: F) -> Result<PointConfiguration<F>> {
        if self.field_spec()? != field.spec() {
            return Err(Error::InvalidField(format!(
                "point file is over {}, requested {}",
                self.field,
                field.spec()
            )));
        }
        if self.points.len() != self.r {
            return Err(Error::IndexMismatch {
                expected: self.r,
                found: self.points.len(),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| Ok([field.parse(&p[0])?, field.parse(&p[1])?, field.parse(&p[2])?]))
            .collect::<Result<Vec<_>>>()?;
        PointConfiguration::from_points(field, points)
    }
}

/// A configuration over either supported field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyConfiguration {
    Rationals(PointConfiguration<Rationals>),
    Prime(PointConfiguration<PrimeField>),
}

impl AnyConfiguration {
    pub fn from_file(file: &PointFile) -> Result<Self> {
        Ok(match file.field_spec()? {
            FieldSpec::Rationals => AnyConfiguration::Rationals(file.configuration(Rationals)?),
            FieldSpec::Prime(p) => AnyConfiguration::Prime(file.configuration(PrimeField::new(p)?)?),
        })
    }

    /// Points from `alpha_5, beta_5, ...` given as literals.
    pub fn from_parameters(spec: FieldSpec, r: usize, params: &[String]) -> Result<Self> {
        fn build<F: Field>(f: F, r: usize, params: &[String]) -> Result<PointConfiguration<F>> {
            let values = params.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>>>()?;
            PointConfiguration::from_parameters(f, r, &values)
        }
        Ok(match spec {
            FieldSpec::Rationals => AnyConfiguration::Rationals(build(Rationals, r, params)?),
            FieldSpec::Prime(p) => AnyConfiguration::Prime(build(PrimeField::new(p)?, r, params)?),
        })
    }

    pub fn r(&self) -> usize {
        match self {
            AnyConfiguration::Rationals(c) => c.r(),
            AnyConfiguration::Prime(c) => c.r(),
        }
    }
}

/// One line of a curve listing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub id: usize,
    pub kind: String,
    pub family: String,
    pub class: DivisorClass,
}

impl From<&Generator> for GeneratorRecord {
    fn from(g: &Generator) -> Self {
        GeneratorRecord {
            id: g.id,
            kind: g.label(),
            family: g.curve().map_or("anticanonical", |c| c.kind.family()).to_string(),
            class: g.class.clone(),
        }
    }
}

/// `{degree, coeffs}` in canonical monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub degree: u32,
    pub coeffs: Vec<String>,
}

impl FormRecord {
    pub fn of<F: Field>(field: &F, form: &PlaneForm<F>) -> Self {
        FormRecord {
            degree: form.degree,
            coeffs: form.coeffs.iter().map(|c| field.format(c)).collect(),
        }
    }
}

/// First line of a relation file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationHeader {
    pub r: usize,
    pub field: String,
    pub points: Vec<[String; 3]>,
}

/// One relation, listing only the monomials with nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub ruling_class: DivisorClass,
    pub n: u8,
    pub monomials: Vec<Monomial>,
    pub coeffs: Vec<String>,
}

/// Writes the header and one JSON line per relation in canonical order.
/// Returns the number of relations written.
pub fn write_relation_file<F: Field, W: Write>(rs: &RelationSet<F>, mut w: W) -> Result<usize> {
    let f = rs.field();
    let points = PointFile::of(&rs.cfg);
    let header = RelationHeader {
        r: rs.r(),
        field: points.field,
        points: points.points,
    };
    serde_json::to_writer(&mut w, &header)?;
    writeln!(w)?;
    let mut count = 0;
    for q in rs.relations() {
        let (monomials, coeffs) = q.terms(f).map(|(m, c)| (m, f.format(c))).unzip();
        let record = RelationRecord {
            ruling_class: q.ruling.class.clone(),
            n: q.ruling.order,
            monomials,
            coeffs,
        };
        serde_json::to_writer(&mut w, &record)?;
        writeln!(w)?;
        count += 1;
    }
    w.flush()?;
    Ok(count)
}

/// Reads a file produced by [`write_relation_file`].
pub fn read_relation_file<R: BufRead>(reader: R) -> Result<(RelationHeader, Vec<RelationRecord>)> {
    let mut lines = reader.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::Parse("empty relation file".into()))??;
    let header: RelationHeader = serde_json::from_str(&header_line)?;
    let mut records = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line)?);
    }
    Ok((header, records))
}
