//! The Sylow p-subgroup of the Chevalley group G2(q) as an 8×8 matrix group,
//! with its monomial linearisation, supercharacter theory, conjugacy classes
//! and irreducible character table, all computed exactly.

pub mod chartable;
pub mod cyclo;
pub mod ffield;
mod linalg;
pub mod matgroup;
pub mod monomial;
pub mod orbits;
pub mod report;
pub mod supertheory;
pub mod tables;

pub use cyclo::{inner_product, theta, ClassFunction, ClassLayout, Cyclo, CycloError, CycloInt};
pub use ffield::{Field, FieldError, Fq};
pub use matgroup::{Coords, G2Syl, G8Elem, GroupError, IntMat8, Mat8, UElem, DEFAULT_BUDGET};
pub use monomial::{chi_a, f_cocycle, kappa, pi, DotAction, Pattern};
pub use orbits::{family_of, Family, OrbitModule, PatternStructure};
pub use report::{Check, Report};
pub use supertheory::{superclass_of, SuperclassId, SupermoduleId};
pub use chartable::{CharacterTable, ChartableError, ClassRep, IrrFamily, IrrId, UClasses};
pub use tables::{EmitError, Format, TableDoc};
