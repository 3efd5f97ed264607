//! JSON documents: fields, elements, matrices, structures, reports and
//! construction provenance. The shapes are fixed by `schema/*.schema.json`.

use serde::{Deserialize, Serialize};

use crate::beauville::{
    verify, BeauvilleStructure, Cond3Method, Effort, Family, LinearStructure, StrongReality,
    Triple, TripleReport, VerificationReport,
};
use crate::error::{Error, Result};
use crate::ffield::{make_field, Fe, Field, Poly};
use crate::psl2::{Mat2, Mode};
use crate::recipes::{Branch, Construction, RecipeChoice};
use crate::suzuki::{sz8, verify_sz, Mat4, SzContext};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u64,
    pub e: u32,
    /// Monic modulus, lowest degree first.
    pub modulus: Vec<u64>,
}

impl FieldJson {
    pub fn from_field(f: &Field) -> FieldJson {
        FieldJson { p: f.p(), e: f.e(), modulus: f.modulus().coeffs().to_vec() }
    }

    pub fn to_field(&self) -> Result<Field> {
        make_field(self.p, self.e, Some(Poly::new(self.p, self.modulus.clone())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElemJson {
    pub coeffs: Vec<u64>,
}

impl ElemJson {
    pub fn new(f: &Field, a: Fe) -> ElemJson {
        ElemJson { coeffs: f.coeffs(a) }
    }

    /// Missing high coefficients are zero.
    pub fn to_elem(&self, f: &Field) -> Result<Fe> {
        let e = f.e() as usize;
        if self.coeffs.len() > e {
            return Err(Error::BadCoefficients { expected: e, found: self.coeffs.len() });
        }
        let mut c = self.coeffs.clone();
        c.resize(e, 0);
        f.from_coeffs(&c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mat2Json {
    pub a: ElemJson,
    pub b: ElemJson,
    pub c: ElemJson,
    pub d: ElemJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

impl Mat2Json {
    pub fn new(f: &Field, m: Mat2, mode: Mode) -> Mat2Json {
        let e = |x| ElemJson::new(f, x);
        Mat2Json { a: e(m.a), b: e(m.b), c: e(m.c), d: e(m.d), mode: Some(mode) }
    }

    pub fn to_mat(&self, f: &Field) -> Result<Mat2> {
        Ok(Mat2::new(self.a.to_elem(f)?, self.b.to_elem(f)?, self.c.to_elem(f)?, self.d.to_elem(f)?))
    }
}

/// A Suzuki-group matrix, row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mat4Json {
    pub rows: [[ElemJson; 4]; 4],
}

impl Mat4Json {
    pub fn new(f: &Field, m: &Mat4) -> Mat4Json {
        Mat4Json { rows: std::array::from_fn(|i| std::array::from_fn(|j| ElemJson::new(f, m.get(i, j)))) }
    }

    pub fn to_mat(&self, f: &Field) -> Result<Mat4> {
        let mut out = [Fe(0); 16];
        for i in 0..4 {
            for j in 0..4 {
                out[4 * i + j] = self.rows[i][j].to_elem(f)?;
            }
        }
        Ok(Mat4(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Two(Mat2Json),
    Four(Mat4Json),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub family: Family,
    pub q: u64,
    /// Defaults to the smallest primitive modulus.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleJson {
    pub x: MatrixJson,
    pub y: MatrixJson,
    /// Derived as `(x y)^-1` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureJson {
    pub group: GroupJson,
    pub t1: TripleJson,
    pub t2: TripleJson,
}

/// A structure read from JSON, ready to verify.
#[derive(Clone, Debug)]
pub enum ParsedStructure {
    Linear(LinearStructure),
    Sz(SzContext, BeauvilleStructure<Mat4>),
}

impl StructureJson {
    pub fn from_linear(s: &LinearStructure) -> StructureJson {
        let f = &s.field;
        let mode = s.family.mode().expect("linear family");
        let m = |x| MatrixJson::Two(Mat2Json::new(f, x, mode));
        let t = |t: Triple<Mat2>| TripleJson { x: m(t.x), y: m(t.y), z: Some(m(t.z)) };
        StructureJson {
            group: GroupJson { family: s.family, q: f.q(), field: Some(FieldJson::from_field(f)) },
            t1: t(s.structure.t1),
            t2: t(s.structure.t2),
        }
    }

    pub fn from_sz(ctx: &SzContext, s: &BeauvilleStructure<Mat4>) -> StructureJson {
        let f = &ctx.field;
        let m = |x: Mat4| MatrixJson::Four(Mat4Json::new(f, &x));
        let t = |t: Triple<Mat4>| TripleJson { x: m(t.x), y: m(t.y), z: Some(m(t.z)) };
        StructureJson {
            group: GroupJson { family: Family::Sz, q: ctx.q, field: Some(FieldJson::from_field(f)) },
            t1: t(s.t1),
            t2: t(s.t2),
        }
    }

    pub fn parse(&self) -> Result<ParsedStructure> {
        match self.group.family {
            Family::Sz => self.parse_sz(),
            family => self.parse_linear(family),
        }
    }

    fn field(&self) -> Result<Field> {
        let f = match &self.group.field {
            Some(fj) => fj.to_field()?,
            None => Field::of_order(self.group.q)?,
        };
        if f.q() != self.group.q {
            return Err(Error::Malformed(format!("field has order {}, group says q = {}", f.q(), self.group.q)));
        }
        Ok(f)
    }

    fn parse_linear(&self, family: Family) -> Result<ParsedStructure> {
        let f = self.field()?;
        let want = family.mode().expect("linear family");
        let mat = |m: &MatrixJson| match m {
            MatrixJson::Two(m) => match m.mode {
                Some(mode) if mode != want => {
                    Err(Error::Malformed(format!("matrix mode {mode} in a {want} structure")))
                }
                _ => m.to_mat(&f),
            },
            MatrixJson::Four(_) => Err(Error::Malformed("4x4 matrix in a linear structure".into())),
        };
        let triple = |t: &TripleJson| -> Result<Triple<Mat2>> {
            let (x, y) = (mat(&t.x)?, mat(&t.y)?);
            let z = match &t.z {
                Some(z) => mat(z)?,
                // adjugate inverts in SL_2; a bad determinant shows up as a cond1 failure
                None => x.mul(&f, y).adjugate(&f),
            };
            Ok(Triple::new(x, y, z))
        };
        let s = LinearStructure::new(&f, family, triple(&self.t1)?, triple(&self.t2)?)?;
        Ok(ParsedStructure::Linear(s))
    }

    fn parse_sz(&self) -> Result<ParsedStructure> {
        if self.group.q != 8 {
            return Err(Error::Unsupported(format!("only Sz(8) is implemented, got q = {}", self.group.q)));
        }
        let ctx = SzContext::new(3)?;
        if let Some(fj) = &self.group.field {
            if fj.to_field()? != ctx.field {
                return Err(Error::Malformed("Sz(8) matrices must use the default modulus t^3+t+1".into()));
            }
        }
        let f = &ctx.field;
        let mat = |m: &MatrixJson| match m {
            MatrixJson::Four(m) => m.to_mat(f),
            MatrixJson::Two(_) => Err(Error::Malformed("2x2 matrix in a Suzuki structure".into())),
        };
        let triple = |t: &TripleJson| -> Result<Triple<Mat4>> {
            let (x, y) = (mat(&t.x)?, mat(&t.y)?);
            let z = match &t.z {
                Some(z) => mat(z)?,
                None => x.mul(f, &y).inverse(f)?,
            };
            Ok(Triple::new(x, y, z))
        };
        let s = BeauvilleStructure::new(triple(&self.t1)?, triple(&self.t2)?);
        Ok(ParsedStructure::Sz(ctx, s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StrongRealityJson {
    Witness { conjugator: MatrixJson, frobenius: u32, rotations: [u8; 2] },
    NoneFound { covers_aut: bool, candidates: usize },
    NotChecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub pass: bool,
    pub family: Family,
    pub q: u64,
    pub effort: Effort,
    pub triples: [TripleReport; 2],
    pub cond3: Option<bool>,
    pub cond3_method: Option<Cond3Method>,
    pub strongly_real: StrongRealityJson,
}

impl ReportJson {
    fn build<M>(
        family: Family,
        q: u64,
        r: &VerificationReport<M>,
        conj: impl Fn(&M) -> MatrixJson,
    ) -> ReportJson {
        let strongly_real = match &r.strongly_real {
            StrongReality::Witness(w) => StrongRealityJson::Witness {
                conjugator: conj(&w.conjugator),
                frobenius: w.frobenius,
                rotations: w.rotations,
            },
            &StrongReality::NoneFound { covers_aut, candidates } => {
                StrongRealityJson::NoneFound { covers_aut, candidates }
            }
            StrongReality::NotChecked => StrongRealityJson::NotChecked,
        };
        ReportJson {
            pass: r.pass(),
            family,
            q,
            effort: r.effort,
            triples: r.triples.clone(),
            cond3: r.cond3,
            cond3_method: r.cond3_method,
            strongly_real,
        }
    }

    pub fn linear(s: &LinearStructure, r: &VerificationReport<Mat2>) -> ReportJson {
        ReportJson::build(s.family, s.q(), r, |m| MatrixJson::Two(Mat2Json::new(&s.field, *m, Mode::PGL2)))
    }

    pub fn sz(ctx: &SzContext, r: &VerificationReport<Mat4>) -> ReportJson {
        ReportJson::build(Family::Sz, ctx.q, r, |m| MatrixJson::Four(Mat4Json::new(&ctx.field, m)))
    }

    pub fn has_witness(&self) -> bool {
        matches!(self.strongly_real, StrongRealityJson::Witness { .. })
    }
}

/// Verifies a parsed structure. Suzuki structures are always checked exhaustively.
pub fn verify_parsed(s: &ParsedStructure, effort: Effort) -> Result<ReportJson> {
    match s {
        ParsedStructure::Linear(s) => Ok(ReportJson::linear(s, &verify(s, effort)?)),
        ParsedStructure::Sz(_, s) => {
            let (ctx, fg) = sz8()?;
            Ok(ReportJson::sz(&ctx, &verify_sz(&ctx, &fg, s)?))
        }
    }
}

/// Parses structure JSON text and verifies it.
pub fn verify_json(text: &str, effort: Effort) -> Result<ReportJson> {
    let doc: StructureJson =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    verify_parsed(&doc.parse()?, effort)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceJson {
    pub branch: Branch,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tq: Option<ElemJson>,
}

impl ChoiceJson {
    pub fn new(f: &Field, c: &RecipeChoice) -> ChoiceJson {
        let e = |v: Option<Fe>| v.map(|v| ElemJson::new(f, v));
        ChoiceJson {
            branch: c.branch,
            a: e(c.a),
            b: e(c.b),
            c: e(c.c),
            d: e(c.d),
            x: e(c.x),
            w: e(c.w),
            y: e(c.y),
            z: e(c.z),
            s: e(c.s),
            tq: e(c.tq),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub t1: ChoiceJson,
    pub t2: ChoiceJson,
}

/// `construct` output: the structure, how it was built, and optionally its report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub structure: StructureJson,
    pub provenance: ProvenanceJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportJson>,
}

impl ConstructionJson {
    pub fn new(c: &Construction, report: Option<ReportJson>) -> ConstructionJson {
        let f = &c.structure.field;
        ConstructionJson {
            structure: StructureJson::from_linear(&c.structure),
            provenance: ProvenanceJson { t1: ChoiceJson::new(f, &c.t1), t2: ChoiceJson::new(f, &c.t2) },
            report,
        }
    }
}
