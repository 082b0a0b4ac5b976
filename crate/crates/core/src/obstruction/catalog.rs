//! Theta-data instances for sweeps.

use std::sync::Arc;

use crate::cohomology::z1;
use crate::error::Result;
use crate::finmod::catalog::sign_character;
use crate::finmod::{FiniteAbelianGroup, FiniteGroup, GammaModule, MuN};
use crate::obstruction::LagrangianThetaData;

#[derive(Debug, Clone)]
pub struct ThetaInstance {
    pub name: String,
    pub data: LagrangianThetaData,
}

/// Γ ∈ {Z/2, V4}, `H = Z/n` for n ∈ {2, 3} with trivial or sign action,
/// each with `χ = 0` and with the first nonzero cocycle in `Z¹(Γ, K*)`; plus
/// one instance over Z/2 where `μ_3` is inverted.
pub fn instances() -> Result<Vec<ThetaInstance>> {
    let mut out = Vec::new();
    for gamma in [Arc::new(FiniteGroup::cyclic(2)), Arc::new(FiniteGroup::klein_four())] {
        for n in [2u32, 3] {
            let module = FiniteAbelianGroup::new(&[n])?;
            let mu = MuN::trivial(gamma.clone(), n)?;
            let mut actions = vec![("triv", GammaModule::trivial(gamma.clone(), module.clone()))];
            if n > 2 {
                if let Some(sign) = sign_character(&gamma) {
                    actions.push(("neg", GammaModule::scalar(gamma.clone(), module.clone(), &sign)?));
                }
            }
            for (label, h) in actions {
                push_pair(&mut out, format!("{}:Z{n}:{label}", gamma.name()), Arc::new(h), mu.clone())?;
            }
        }
    }
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let mu3 = MuN::with_action(c2.clone(), 3, vec![1, 2])?;
    let h = Arc::new(GammaModule::trivial(c2, FiniteAbelianGroup::new(&[3])?));
    push_pair(&mut out, "C2:Z3:cyclotomic".to_string(), h, mu3)?;
    Ok(out)
}

fn push_pair(out: &mut Vec<ThetaInstance>, name: String, h: Arc<GammaModule>, mu: MuN) -> Result<()> {
    let plain = LagrangianThetaData::new(h.clone(), mu.clone(), None)?;
    let kd = Arc::new(plain.heisenberg().k_dual().module.clone());
    let chi = z1(&kd)?.into_iter().find(|c| !c.is_zero());
    out.push(ThetaInstance { name: format!("{name}:chi0"), data: plain });
    if let Some(chi) = chi {
        let data = LagrangianThetaData::new(h, mu, Some(chi))?;
        out.push(ThetaInstance { name: format!("{name}:chi1"), data });
    }
    Ok(())
}
