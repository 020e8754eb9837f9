use paraclass_core::models::{
    model_general, model_k_greater, model_k_less, model_para_sasakian_heisenberg, FamilyId,
};
use paraclass_core::{Exact, LieFrameModel};

use crate::error::CliError;
use crate::modelfile::{AnyModel, JsonScalar};

pub fn parse_family(s: &str) -> Result<FamilyId, CliError> {
    [
        FamilyId::KGreater,
        FamilyId::KLess,
        FamilyId::Heisenberg,
        FamilyId::General,
    ]
    .into_iter()
    .find(|f| f.as_str().eq_ignore_ascii_case(s))
    .ok_or_else(|| {
        CliError::Usage(format!(
            "unknown family `{s}` (expected KGreater, KLess, Heisenberg or General)"
        ))
    })
}

fn arity(family: FamilyId) -> usize {
    match family {
        FamilyId::KGreater | FamilyId::KLess => 1,
        FamilyId::Heisenberg => 0,
        FamilyId::General => 3,
    }
}

pub fn build_family<S: JsonScalar>(
    family: FamilyId,
    params: &[String],
    eps: i8,
) -> Result<LieFrameModel<S>, CliError> {
    if params.len() != arity(family) {
        return Err(CliError::Usage(format!(
            "{family} takes {} parameter(s), got {}",
            arity(family),
            params.len()
        )));
    }
    if eps != 1 && eps != -1 {
        return Err(CliError::Usage(format!("eps must be 1 or -1, got {eps}")));
    }
    let p: Vec<S> = params
        .iter()
        .map(|s| S::parse_literal(s).map_err(|e| CliError::Usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    match family {
        FamilyId::KGreater => Ok(model_k_greater(p[0].clone(), eps)),
        FamilyId::KLess => model_k_less(p[0].clone(), eps).map_err(CliError::core("generate")),
        FamilyId::Heisenberg => Ok(model_para_sasakian_heisenberg()),
        FamilyId::General => {
            if eps != 1 {
                return Err(CliError::Usage(
                    "General is defined for eps = 1 only".into(),
                ));
            }
            let [c2, c3, c4]: [S; 3] = p.try_into().expect("arity checked");
            Ok(model_general(c2, c3, c4))
        }
    }
}

/// Builds a family member in exact mode, or in float mode when `float` is set.
pub fn generate(
    family: &str,
    params: &[String],
    eps: i8,
    float: bool,
) -> Result<AnyModel, CliError> {
    let family = parse_family(family)?;
    Ok(if float {
        AnyModel::Float(build_family::<f64>(family, params, eps)?)
    } else {
        AnyModel::Exact(build_family::<Exact>(family, params, eps)?)
    })
}
