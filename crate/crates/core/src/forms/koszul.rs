//! The Koszul bracket on forms and the map `Σ: Ω_B A -> D_B A`, `da -> H_a`.

use crate::algebra_core::{localize, Elem, Kind, Letter, Quiver, Tensor};
use crate::brackets::{Engine, LetterTable};
use crate::error::{Error, Result};
use crate::polyvectors::{hamiltonian_field, PolyVector};

use super::calculus::{check_form, differential_tensor};

/// Letter values of the degree -1 bracket extending an even bracket `T`:
/// `{{a, b}} = 0`, `{{da, b}} = {{a, db}} = T(a, b)`, `{{da, db}} = d T(a, b)`.
#[derive(Clone, Debug)]
pub struct KoszulTable<T: LetterTable> {
    base: T,
}

impl<T: LetterTable> KoszulTable<T> {
    pub fn new(base: T) -> Result<KoszulTable<T>> {
        if base.odd() {
            return Err(Error::Invalid("the Koszul bracket extends a degree 0 bracket".into()));
        }
        Ok(KoszulTable { base })
    }

    pub fn base(&self) -> &T {
        &self.base
    }

    fn undiff(&self, l: &Letter) -> Letter {
        self.base.quiver().letter(Kind::Arrow, l.arrow as usize)
    }
}

impl<T: LetterTable> LetterTable for KoszulTable<T> {
    fn quiver(&self) -> &Quiver {
        self.base.quiver()
    }
    fn odd(&self) -> bool {
        true
    }
    fn letters(&self, x: &Letter, y: &Letter) -> Tensor {
        match (x.kind, y.kind) {
            (Kind::Differential, Kind::Arrow) => self.base.letters(&self.undiff(x), y),
            (Kind::Arrow, Kind::Differential) => self.base.letters(x, &self.undiff(y)),
            (Kind::Differential, Kind::Differential) => {
                differential_tensor(self.base.quiver(), &self.base.letters(&self.undiff(x), &self.undiff(y)))
            }
            _ => Tensor::zero(2),
        }
    }
    fn accepts(&self, kind: Kind) -> bool {
        matches!(kind, Kind::Arrow | Kind::Differential)
    }
}

pub type Koszul<T> = Engine<KoszulTable<T>>;

/// The Koszul bracket engine of an even bracket table.
pub fn koszul<T: LetterTable>(base: T) -> Result<Koszul<T>> {
    Ok(Engine::new(KoszulTable::new(base)?))
}

/// `Σ`: the algebra map fixing `A` and sending `da` to the Hamiltonian field `H_a`.
pub fn sigma_map<T: LetterTable>(engine: &Engine<T>, x: &Elem) -> Result<PolyVector> {
    check_form(x)?;
    let q = engine.quiver();
    let fields: Vec<PolyVector> =
        (0..q.n_arrows()).map(|a| hamiltonian_field(engine, &Elem::letter(q.letter(Kind::Arrow, a)))).collect::<Result<_>>()?;
    let image = x.map_words(|w| {
        let mut acc = Elem::idem(w.src());
        for l in w.letters() {
            let f = match l.kind {
                Kind::Differential => fields[l.arrow as usize].clone(),
                _ => Elem::letter(*l),
            };
            acc = acc.mul(&f);
        }
        acc
    });
    Ok(localize(&image, q))
}
