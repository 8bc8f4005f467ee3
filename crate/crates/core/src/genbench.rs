//! Synthetic benchmark chains: `n` structurally identical blocks linked by
//! carry variables, in a flat flavor and a pattern flavor.
//!
//! Block `i` reads carry `z<i-1>` and writes carry `z<i>`. Its conclusion
//! `o_i` is derived by one linear combination of the block axioms. A single
//! link axiom `1 - sum(o_i)` closes the chain, so the target `1` follows
//! from the link axiom and all block conclusions.
//!
//! Two block templates are available:
//!
//! * [`Template::Resolution`] resolves `z<i-1>*(1-y<i>)` against
//!   `y<i>*z<i>*D` into `z<i-1>*z<i>*D`, where `D = (1-x1)*...*(1-xs)` is a
//!   product of side literals shared by all blocks. The derivation needs the
//!   multiplier `z<i>*D`, so a flat block step is long while an application
//!   only restates the conclusion.
//! * [`Template::Example1`] reproduces the linear block `z<i-1>+2*y<i>-2`,
//!   `-y<i>-z<i>+1` giving `z<i-1>-2*z<i>`. Its applications are longer than
//!   the steps they replace.
//!
//! Indices are numbered with zero padding so that names sort the same way in
//! every block.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::format::{serialize, serialize_target, Index, PatternDecl, PatternUse, ProofDocument, Step};
use crate::poly::{Monomial, Polynomial, Substitution, Var};
use crate::Poly;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Flavor {
    #[default]
    Flat,
    Pattern,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Template {
    #[default]
    Resolution,
    Example1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub blocks: usize,
    /// Axioms per block. The example template always has 2.
    pub arity: usize,
    /// Offset of the carry numbering.
    pub seed: u64,
    /// Number of shared side literals of the resolution template.
    pub side: usize,
    pub template: Template,
}

impl Default for ChainSpec {
    fn default() -> Self {
        ChainSpec { blocks: 1, arity: 2, seed: 0, side: 5, template: Template::Resolution }
    }
}

impl ChainSpec {
    pub fn new(blocks: usize) -> Self {
        ChainSpec { blocks: blocks.max(1), ..Self::default() }
    }

    fn arity(&self) -> usize {
        match self.template {
            Template::Resolution => self.arity.max(2),
            Template::Example1 => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Chain {
    pub axioms: ProofDocument,
    pub target: Poly,
    pub proof: ProofDocument,
}

impl Chain {
    /// Writes `<name>.axioms`, `<name>.target` and `<name>.proof` into `dir`.
    pub fn write(&self, dir: &Path, name: &str) -> io::Result<[PathBuf; 3]> {
        fs::create_dir_all(dir)?;
        let paths = ["axioms", "target", "proof"].map(|ext| dir.join(format!("{name}.{ext}")));
        fs::write(&paths[0], serialize(&self.axioms))?;
        fs::write(&paths[1], serialize_target(&self.target))?;
        fs::write(&paths[2], serialize(&self.proof))?;
        Ok(paths)
    }
}

/// Variables of one block.
struct BlockVars {
    carry_in: Var,
    pivots: Vec<Var>,
    carry_out: Var,
    side: Vec<Var>,
}

impl BlockVars {
    fn all(&self) -> impl Iterator<Item = &Var> {
        std::iter::once(&self.carry_in).chain(&self.pivots).chain(std::iter::once(&self.carry_out)).chain(&self.side)
    }
}

/// Axioms of a block, the multiplier of each, and the conclusion.
struct Block {
    inputs: Vec<Poly>,
    coeffs: Vec<Poly>,
    conclusion: Poly,
}

fn var(v: &Var) -> Poly {
    Polynomial::var(v.clone())
}

fn not(v: &Var) -> Poly {
    &Poly::one() - &var(v)
}

fn product<'a>(vars: impl IntoIterator<Item = &'a Var>) -> Poly {
    Polynomial::term(crate::Rational::from_integer(1.into()), Monomial::from_vars(vars.into_iter().cloned()))
}

fn block(template: Template, vars: &BlockVars) -> Block {
    let (zp, zn) = (var(&vars.carry_in), var(&vars.carry_out));
    match template {
        Template::Example1 => {
            let y = var(&vars.pivots[0]);
            let two = Poly::int(2);
            Block {
                inputs: vec![&(&zp + &(&two * &y)) - &two, &(&Poly::one() - &y) - &zn],
                coeffs: vec![Poly::one(), two.clone()],
                conclusion: &zp - &(&two * &zn),
            }
        }
        Template::Resolution => {
            let d = vars.side.iter().fold(Poly::one(), |acc, x| &acc * &not(x));
            let zn_d = &zn * &d;
            let ys = &vars.pivots;
            let k = ys.len() + 1;
            let mut inputs = vec![&zp * &not(&ys[0])];
            let mut coeffs = vec![zn_d.clone()];
            for j in 1..ys.len() {
                inputs.push(&var(&ys[j - 1]) * &not(&ys[j]));
                coeffs.push(&(&zp * &zn_d) * &product(&ys[..j - 1]));
            }
            inputs.push(&var(&ys[k - 2]) * &zn_d);
            coeffs.push(&zp * &product(&ys[..k - 2]));
            Block { inputs, coeffs, conclusion: &zp * &zn_d }
        }
    }
}

fn padded(prefix: &str, k: u64, width: usize) -> Var {
    Var::new(format!("{prefix}{k:0width$}"))
}

fn digits(n: u64) -> usize {
    n.to_string().len()
}

/// Builds both the axioms and the proof of a chain.
pub fn generate_chain(spec: &ChainSpec, flavor: Flavor) -> Chain {
    let n = spec.blocks.max(1);
    let arity = spec.arity();
    let width = digits(spec.seed + n as u64);
    let pivot_width = digits(arity as u64 - 1);
    let side_count = if spec.template == Template::Resolution { spec.side } else { 0 };
    let side: Vec<Var> = (1..=side_count as u64).map(|t| padded("x", t, digits(side_count as u64))).collect();

    let block_vars = |i: u64| {
        let pivots = if arity == 2 {
            vec![padded("y", spec.seed + i, width)]
        } else {
            (1..arity as u64)
                .map(|j| Var::new(format!("y{:0width$}_{j:0pivot_width$}", spec.seed + i)))
                .collect()
        };
        BlockVars {
            carry_in: padded("z", spec.seed + i - 1, width),
            pivots,
            carry_out: padded("z", spec.seed + i, width),
            side: side.clone(),
        }
    };

    let total = (arity * n + 1 + n + 1) as u64;
    let index_width = digits(total);
    let index = |k: u64| Index::new(format!("l{k:0index_width$}"));

    let mut axioms = ProofDocument::new();
    let mut blocks = Vec::with_capacity(n);
    let mut next = 1u64;
    let mut link = Poly::one();
    for i in 1..=n as u64 {
        let vars = block_vars(i);
        let b = block(spec.template, &vars);
        let mut indices = Vec::with_capacity(arity);
        for poly in &b.inputs {
            axioms.push(Step::Axiom { index: index(next), poly: poly.clone() });
            indices.push(index(next));
            next += 1;
        }
        link = &link - &b.conclusion;
        blocks.push((vars, b, indices));
    }
    let link_index = index(next);
    axioms.push(Step::Axiom { index: link_index.clone(), poly: link });
    next += 1;

    let mut proof = ProofDocument::new();
    if flavor == Flavor::Pattern {
        proof.push(Step::PatternNew(pattern_decl(spec.template, arity, side_count)));
    }
    let mut conclusions = Vec::with_capacity(n);
    for (vars, b, indices) in &blocks {
        let out = index(next);
        next += 1;
        proof.push(match flavor {
            Flavor::Flat => Step::LinComb {
                index: out.clone(),
                terms: b.coeffs.iter().cloned().zip(indices.iter().cloned()).collect(),
                conclusion: b.conclusion.clone(),
            },
            Flavor::Pattern => Step::PatternApply(PatternUse {
                id: "1".into(),
                fresh: Vec::new(),
                phi: template_vars(arity, side_count)
                    .all()
                    .zip(vars.all())
                    .map(|(v, w)| (v.clone(), var(w)))
                    .collect::<Substitution>(),
                inputs: indices.clone(),
                outputs: vec![(out.clone(), b.conclusion.clone())],
            }),
        });
        conclusions.push(out);
    }
    let terms = std::iter::once(link_index).chain(conclusions).map(|j| (Poly::one(), j)).collect();
    proof.push(Step::LinComb { index: index(next), terms, conclusion: Poly::one() });

    Chain { axioms, target: Poly::one(), proof }
}

/// Template variables `v1, v2, ...`: carry in, pivots, carry out, side.
fn template_vars(arity: usize, side: usize) -> BlockVars {
    let v = |k: usize| Var::new(format!("v{k}"));
    BlockVars {
        carry_in: v(1),
        pivots: (2..=arity).map(v).collect(),
        carry_out: v(arity + 1),
        side: (arity + 2..arity + 2 + side).map(v).collect(),
    }
}

fn pattern_decl(template: Template, arity: usize, side: usize) -> PatternDecl {
    let b = block(template, &template_vars(arity, side));
    let inputs: Vec<(Index, Poly)> =
        b.inputs.iter().enumerate().map(|(k, p)| (Index::new(format!("p{}", k + 1)), p.clone())).collect();
    let out = Index::new(format!("p{}", arity + 1));
    let terms = b.coeffs.iter().cloned().zip(inputs.iter().map(|(i, _)| i.clone())).collect();
    PatternDecl {
        id: "1".into(),
        inputs,
        body: vec![Step::LinComb { index: out.clone(), terms, conclusion: b.conclusion }],
        outputs: vec![out],
    }
}
