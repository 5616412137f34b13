//! Turning a [`GroupExpr`] into a permutation group.

use std::path::Path;

use clpforge_core::constructions::{alternating, cyclic, direct_product, symmetric, weir_sylow_gl, wreath_product};
use clpforge_core::matrix::{Family, MatrixAction, MatrixGroup, MatrixGroupSpec};
use clpforge_core::{permfile, PermGroup};

use crate::expr::{GroupExpr, MatrixKind};
use crate::CliError;

/// File name under which the bundled Tits group generators are found when no
/// such file exists on disk.
pub const BUNDLED_TITS_NAME: &str = "tits_1600.txt";
pub const BUNDLED_TITS: &str = include_str!("../data/tits_1600.txt");
pub const TITS_ORDER: u64 = 17_971_200;

#[derive(Clone, Debug)]
pub struct Realized {
    pub group: PermGroup,
    pub descriptor: String,
    /// The matrix action behind a matrix-family expression.
    pub action: Option<MatrixAction>,
}

pub fn realize(expr: &GroupExpr, seed: u64) -> Result<Realized, CliError> {
    let plain = |group: PermGroup| Realized { group, descriptor: expr.to_string(), action: None };
    Ok(match expr {
        GroupExpr::Cyclic(n) => plain(cyclic(*n)?),
        GroupExpr::Sym(n) => plain(symmetric(*n)?),
        GroupExpr::Alt(n) => plain(alternating(*n)?),
        GroupExpr::Direct(a, b) => plain(direct_product(&realize(a, seed)?.group, &realize(b, seed)?.group)?),
        GroupExpr::Wreath(a, b) => plain(wreath_product(&realize(a, seed)?.group, &realize(b, seed)?.group)?),
        GroupExpr::WeirSylowGL { n, q, p } => plain(weir_sylow_gl(*n, *q, *p)?),
        GroupExpr::Matrix { kind, n, q } => {
            let family = match kind {
                MatrixKind::GL => Family::GL,
                MatrixKind::SL | MatrixKind::PSL => Family::SL,
                MatrixKind::SU | MatrixKind::PSU => Family::SU,
            };
            let mg = MatrixGroup::new(MatrixGroupSpec::new(family, *n, *q)?)?;
            let action = if kind.is_projective() { MatrixAction::projective(mg)? } else { MatrixAction::faithful(mg)? };
            let group = action.image(seed)?;
            Realized { group, descriptor: expr.to_string(), action: Some(action) }
        }
        GroupExpr::PermFile(path) => plain(load_perm_file(path)?),
    })
}

/// Reads a permutation file, falling back to the bundled data for its file
/// name. Bundled data is certified against its known order.
pub fn load_perm_file(path: &str) -> Result<PermGroup, CliError> {
    let p = Path::new(path);
    let text = if p.exists() {
        std::fs::read_to_string(p).map_err(|source| CliError::Io { path: path.to_string(), source })?
    } else if p.file_name().is_some_and(|f| f == BUNDLED_TITS_NAME) {
        BUNDLED_TITS.to_string()
    } else {
        return Err(CliError::Io { path: path.to_string(), source: std::io::ErrorKind::NotFound.into() });
    };
    let (degree, gens) = permfile::parse(&text)?;
    let g = PermGroup::new(degree, gens)?;
    if text == BUNDLED_TITS && g.order_u64() != Some(TITS_ORDER) {
        return Err(CliError::DataOrder { name: BUNDLED_TITS_NAME.into(), found: g.order().to_string(), expected: TITS_ORDER });
    }
    Ok(g)
}

/// The bundled Tits group, order certified.
pub fn tits_group() -> Result<PermGroup, CliError> {
    load_perm_file(BUNDLED_TITS_NAME)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_group;

    fn order(text: &str) -> String {
        realize(&parse_group(text).unwrap(), 0).unwrap().group.order().to_string()
    }

    #[test]
    fn small_expressions() {
        assert_eq!(order("Alt(9)"), "181440");
        assert_eq!(order("Direct(Sym(3),Cyclic(3))"), "18");
        assert_eq!(order("Wreath(Cyclic(3),Cyclic(3))"), "81");
        assert_eq!(order("SL(2,3)"), "24");
        assert_eq!(order("PSL(2,7)"), "168");
        assert_eq!(order("SU(3,2)"), "216");
        assert_eq!(order("WeirSylowGL(4,7,3)"), "243");
    }

    #[test]
    fn bundled_tits_file() {
        let g = tits_group().unwrap();
        assert_eq!(g.degree(), 1600);
        assert_eq!(g.order_u64(), Some(TITS_ORDER));
        assert!(matches!(load_perm_file("/nonexistent/other.txt"), Err(CliError::Io { .. })));
    }
}
