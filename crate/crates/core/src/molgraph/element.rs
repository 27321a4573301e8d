/// Chemical elements of the supported subset, plus the dummy atom `*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Dummy / attachment-point atom, written `*` or `[n*]`.
    Star,
    H,
    B,
    C,
    N,
    O,
    F,
    P,
    S,
    Cl,
    Br,
    I,
}

impl Element {
    /// Atomic number; the dummy sorts below everything as 0.
    pub fn atomic_number(self) -> u8 {
        match self {
            Element::Star => 0,
            Element::H => 1,
            Element::B => 5,
            Element::C => 6,
            Element::N => 7,
            Element::O => 8,
            Element::F => 9,
            Element::P => 15,
            Element::S => 16,
            Element::Cl => 17,
            Element::Br => 35,
            Element::I => 53,
        }
    }

    /// Fixed atomic mass table (unified atomic mass units). Dummy atoms weigh nothing.
    pub fn mass(self) -> f64 {
        match self {
            Element::Star => 0.0,
            Element::H => 1.008,
            Element::B => 10.81,
            Element::C => 12.011,
            Element::N => 14.007,
            Element::O => 15.999,
            Element::F => 18.998,
            Element::P => 30.974,
            Element::S => 32.06,
            Element::Cl => 35.45,
            Element::Br => 79.904,
            Element::I => 126.904,
        }
    }

    /// Default valence used only to fill implicit hydrogens for mol_weight
    /// (organic-subset convention). Not a validity model.
    pub(crate) fn default_valence(self) -> u8 {
        match self {
            Element::Star => 0,
            Element::H => 1,
            Element::B => 3,
            Element::C => 4,
            Element::N => 3,
            Element::O => 2,
            Element::F => 1,
            Element::P => 3,
            Element::S => 2,
            Element::Cl => 1,
            Element::Br => 1,
            Element::I => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Element::Star => "*",
            Element::H => "H",
            Element::B => "B",
            Element::C => "C",
            Element::N => "N",
            Element::O => "O",
            Element::F => "F",
            Element::P => "P",
            Element::S => "S",
            Element::Cl => "Cl",
            Element::Br => "Br",
            Element::I => "I",
        }
    }

    /// Elements that may carry the aromatic (lowercase) flag.
    pub fn can_be_aromatic(self) -> bool {
        matches!(
            self,
            Element::B | Element::C | Element::N | Element::O | Element::P | Element::S
        )
    }

    pub(crate) fn from_symbol(s: &str) -> Option<Element> {
        Some(match s {
            "*" => Element::Star,
            "H" => Element::H,
            "B" => Element::B,
            "C" => Element::C,
            "N" => Element::N,
            "O" => Element::O,
            "F" => Element::F,
            "P" => Element::P,
            "S" => Element::S,
            "Cl" => Element::Cl,
            "Br" => Element::Br,
            "I" => Element::I,
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mass_table_spot_checks() {
        assert_eq!(Element::C.mass(), 12.011);
        assert_eq!(Element::Star.mass(), 0.0);
        assert_eq!(Element::Br.mass(), 79.904);
    }

    #[test]
    fn dummy_sorts_first_by_atomic_number() {
        assert!(Element::Star.atomic_number() < Element::H.atomic_number());
    }
}
