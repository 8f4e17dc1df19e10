use p1omega::forms::{config_to_form, discriminant, roots_config};
use p1omega::projective::omega_member;
use p1omega::{PointConfig, SPrimeSet};

#[test]
fn readme_example() -> p1omega::Result<()> {
    let a: PointConfig = "0:1,1:1,2:1".parse()?;
    let s: SPrimeSet = "2".parse()?;
    assert!(omega_member(&a, &s));
    assert!(!omega_member(&a, &SPrimeSet::empty()));
    let f = config_to_form(&a);
    assert_eq!(f.to_string(), "[1, -3, 2, 0]");
    assert_eq!(format!("{f:#}"), "x^3 - 3x^2y + 2xy^2");
    assert_eq!(discriminant(&f)?, 4.into());
    assert_eq!(roots_config(&f)?, a);
    Ok(())
}
