/// `serde(with = ...)` for `Option<Rational>` stored as a string or null.
pub mod opt_rational {
    use cc_core::{rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(rational::format).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(s) => rational::parse(&s).map(Some).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))),
        }
    }
}
