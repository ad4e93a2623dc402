//! C ABI over the `pyroplate` solvers.
//!
//! Objects cross the boundary as opaque handles created by `pp_*_new` or
//! `pp_*_from_json` and released by the matching `pp_*_free`. Every call
//! returns a [`PpStatus`]; on failure the message of the most recent error
//! on the calling thread is available from [`pp_last_error_message`].
//! Enumerations are passed as `int32_t` and checked on entry. No panic
//! crosses the boundary.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pyroplate::control::{invert, sensitivity, ControlQuery, TargetField};
use pyroplate::fd::verify;
use pyroplate::io::{material_from_str, problem_from_str, InputError};
use pyroplate::model::{MaterialHexagonal, Orientation};
use pyroplate::panel::{solve_panel, BoundaryData, Datum, PanelSolution, ProblemSpec, Variant};
use pyroplate::Error;

/// Result code of every `pp_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Schema = 3,
    InvalidEnum = 4,
    SymmetryViolation = 10,
    NonPhysical = 11,
    DegenerateCrossFlux = 12,
    DegenerateCoupling = 13,
    SingularDenominator = 14,
    NonFiniteData = 15,
    OutOfDomain = 16,
    Uncontrollable = 17,
    InvalidFreeDatum = 18,
    UnsupportedTarget = 19,
    SingularSystem = 20,
    GridTooCoarse = 21,
    SpecMismatch = 22,
    OutOfSchedule = 23,
    InvalidInput = 24,
    Panic = 99,
}

/// Plate normal: `PP_THICKNESS1` (x1) or `PP_THICKNESS3` (poling axis).
pub const PP_THICKNESS1: i32 = 0;
pub const PP_THICKNESS3: i32 = 1;
/// Lower-face electric condition: charge (`PP_VARIANT_I`) or potential (`PP_VARIANT_II`).
pub const PP_VARIANT_I: i32 = 0;
pub const PP_VARIANT_II: i32 = 1;
pub const PP_TARGET_TEMPERATURE: i32 = 0;
pub const PP_TARGET_POTENTIAL: i32 = 1;
/// Control data, numbered as in the JSON names
/// Tbar, phibar, tbar1..3, ubar1..3, qbar, Dbar, phibar2.
pub const PP_TBAR: i32 = 0;
pub const PP_PHIBAR: i32 = 1;
pub const PP_TBAR1: i32 = 2;
pub const PP_TBAR2: i32 = 3;
pub const PP_TBAR3: i32 = 4;
pub const PP_UBAR1: i32 = 5;
pub const PP_UBAR2: i32 = 6;
pub const PP_UBAR3: i32 = 7;
pub const PP_QBAR: i32 = 8;
pub const PP_DBAR: i32 = 9;
pub const PP_PHIBAR2: i32 = 10;

/// Material coefficients.
pub struct PpMaterial(MaterialHexagonal);
/// Material, orientation, variant, half-thickness and boundary data.
pub struct PpProblem(ProblemSpec);
/// A solved problem.
pub struct PpSolution(PanelSolution);

/// Full state at one thickness coordinate. Stresses in Voigt order.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PpState {
    pub x: f64,
    pub temperature: f64,
    pub potential: f64,
    pub displacement: [f64; 3],
    pub stress: [f64; 6],
    pub electric_displacement: [f64; 3],
    pub heat_flux: [f64; 3],
}

/// Scalars of the thickness-direction system.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PpReduced {
    pub stiffness: f64,
    pub piezo: f64,
    pub piezo_prime: f64,
    pub thermal_stress: f64,
    pub pyro: f64,
    pub permittivity: f64,
    pub conductivity: f64,
    pub cross_conductivity: f64,
    pub potential_gain: f64,
    pub coupling: f64,
    pub stiffened_modulus: f64,
    pub rate: f64,
    pub mechanical_drive: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(PpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::SymmetryViolation { .. } => PpStatus::SymmetryViolation,
            Error::NonPhysical { .. } => PpStatus::NonPhysical,
            Error::DegenerateCrossFlux { .. } => PpStatus::DegenerateCrossFlux,
            Error::DegenerateCoupling => PpStatus::DegenerateCoupling,
            Error::SingularDenominator { .. } => PpStatus::SingularDenominator,
            Error::NonFiniteData(_) => PpStatus::NonFiniteData,
            Error::OutOfDomain { .. } => PpStatus::OutOfDomain,
            Error::Uncontrollable { .. } => PpStatus::Uncontrollable,
            Error::InvalidFreeDatum { .. } => PpStatus::InvalidFreeDatum,
            Error::UnsupportedTarget { .. } => PpStatus::UnsupportedTarget,
            Error::SingularSystem(_) => PpStatus::SingularSystem,
            Error::GridTooCoarse { .. } => PpStatus::GridTooCoarse,
            Error::SpecMismatch => PpStatus::SpecMismatch,
            Error::OutOfSchedule { .. } => PpStatus::OutOfSchedule,
            Error::InvalidInput(_) => PpStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

impl From<InputError> for Fail {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Domain(e) => e.into(),
            other => Fail(PpStatus::Schema, other.to_string()),
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(PpStatus::NullPointer, format!("{what} is null"))
}

fn bad_enum(what: &str, v: i32) -> Fail {
    Fail(PpStatus::InvalidEnum, format!("{what} = {v} is not a valid value"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PpStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            PpStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(PpStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn orientation(v: i32) -> Result<Orientation, Fail> {
    match v {
        PP_THICKNESS1 => Ok(Orientation::Thickness1),
        PP_THICKNESS3 => Ok(Orientation::Thickness3),
        _ => Err(bad_enum("orientation", v)),
    }
}

fn variant(v: i32) -> Result<Variant, Fail> {
    match v {
        PP_VARIANT_I => Ok(Variant::I),
        PP_VARIANT_II => Ok(Variant::II),
        _ => Err(bad_enum("variant", v)),
    }
}

fn target(v: i32) -> Result<TargetField, Fail> {
    match v {
        PP_TARGET_TEMPERATURE => Ok(TargetField::Temperature),
        PP_TARGET_POTENTIAL => Ok(TargetField::Potential),
        _ => Err(bad_enum("target", v)),
    }
}

fn datum(v: i32) -> Result<Datum, Fail> {
    usize::try_from(v)
        .ok()
        .and_then(|i| Datum::ALL.get(i).copied())
        .ok_or_else(|| bad_enum("datum", v))
}

fn boxed<T>(slot: *mut *mut T, value: T) -> Result<(), Fail> {
    let slot = unsafe { out(slot, "output handle")? };
    *slot = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next `pp_*` call on the same thread.
#[no_mangle]
pub extern "C" fn pp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn status_from_code(code: i32) -> Option<PpStatus> {
    use PpStatus::*;
    [
        Ok, NullPointer, InvalidUtf8, Schema, InvalidEnum, SymmetryViolation, NonPhysical,
        DegenerateCrossFlux, DegenerateCoupling, SingularDenominator, NonFiniteData, OutOfDomain,
        Uncontrollable, InvalidFreeDatum, UnsupportedTarget, SingularSystem, GridTooCoarse,
        SpecMismatch, OutOfSchedule, InvalidInput, Panic,
    ]
    .into_iter()
    .find(|s| *s as i32 == code)
}

/// Static name of a status code, e.g. `"DegenerateCoupling"`; `"Unknown"`
/// for codes outside the enumeration.
#[no_mangle]
pub extern "C" fn pp_status_name(code: i32) -> *const c_char {
    let Some(status) = status_from_code(code) else {
        return c"Unknown".as_ptr();
    };
    let s: &'static CStr = match status {
        PpStatus::Ok => c"Ok",
        PpStatus::NullPointer => c"NullPointer",
        PpStatus::InvalidUtf8 => c"InvalidUtf8",
        PpStatus::Schema => c"Schema",
        PpStatus::InvalidEnum => c"InvalidEnum",
        PpStatus::SymmetryViolation => c"SymmetryViolation",
        PpStatus::NonPhysical => c"NonPhysical",
        PpStatus::DegenerateCrossFlux => c"DegenerateCrossFlux",
        PpStatus::DegenerateCoupling => c"DegenerateCoupling",
        PpStatus::SingularDenominator => c"SingularDenominator",
        PpStatus::NonFiniteData => c"NonFiniteData",
        PpStatus::OutOfDomain => c"OutOfDomain",
        PpStatus::Uncontrollable => c"Uncontrollable",
        PpStatus::InvalidFreeDatum => c"InvalidFreeDatum",
        PpStatus::UnsupportedTarget => c"UnsupportedTarget",
        PpStatus::SingularSystem => c"SingularSystem",
        PpStatus::GridTooCoarse => c"GridTooCoarse",
        PpStatus::SpecMismatch => c"SpecMismatch",
        PpStatus::OutOfSchedule => c"OutOfSchedule",
        PpStatus::InvalidInput => c"InvalidInput",
        PpStatus::Panic => c"Panic",
    };
    s.as_ptr()
}

#[no_mangle]
pub extern "C" fn pp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and validates material JSON.
#[no_mangle]
pub unsafe extern "C" fn pp_material_from_json(json: *const c_char, result: *mut *mut PpMaterial) -> PpStatus {
    guard(|| {
        let m = material_from_str(text(json, "json")?)?;
        boxed(result, PpMaterial(m))
    })
}

/// The built-in illustrative PZT-class material.
#[no_mangle]
pub unsafe extern "C" fn pp_material_sample(result: *mut *mut PpMaterial) -> PpStatus {
    guard(|| boxed(result, PpMaterial(MaterialHexagonal::illustrative_pzt())))
}

#[no_mangle]
pub unsafe extern "C" fn pp_material_free(material: *mut PpMaterial) {
    release(material)
}

/// Builds a problem. `data` points to ten values in the order Tbar, phibar,
/// tbar1..3, ubar1..3, qbar, and Dbar (variant I) or phibar2 (variant II).
#[no_mangle]
pub unsafe extern "C" fn pp_problem_new(
    material: *const PpMaterial,
    orientation_code: i32,
    variant_code: i32,
    h: f64,
    data: *const f64,
    result: *mut *mut PpProblem,
) -> PpStatus {
    guard(|| {
        let m = borrow(material, "material")?;
        let v = variant(variant_code)?;
        if data.is_null() {
            return Err(null("data"));
        }
        let d = BoundaryData::from_array(v, &*data.cast::<[f64; 10]>());
        let spec = ProblemSpec::new(m.0.clone(), orientation(orientation_code)?, v, h, d)?;
        boxed(result, PpProblem(spec))
    })
}

/// Builds a problem from problem-file JSON (orientation, variant, h, data).
#[no_mangle]
pub unsafe extern "C" fn pp_problem_from_json(
    material: *const PpMaterial,
    json: *const c_char,
    result: *mut *mut PpProblem,
) -> PpStatus {
    guard(|| {
        let m = borrow(material, "material")?;
        let spec = problem_from_str(text(json, "json")?)?.spec(m.0.clone())?;
        boxed(result, PpProblem(spec))
    })
}

#[no_mangle]
pub unsafe extern "C" fn pp_problem_free(problem: *mut PpProblem) {
    release(problem)
}

#[no_mangle]
pub unsafe extern "C" fn pp_solve(problem: *const PpProblem, result: *mut *mut PpSolution) -> PpStatus {
    guard(|| {
        let sol = solve_panel(&borrow(problem, "problem")?.0)?;
        boxed(result, PpSolution(sol))
    })
}

#[no_mangle]
pub unsafe extern "C" fn pp_solution_free(solution: *mut PpSolution) {
    release(solution)
}

/// State at x, -h ≤ x ≤ h.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_state(solution: *const PpSolution, x: f64, state: *mut PpState) -> PpStatus {
    guard(|| {
        let s = borrow(solution, "solution")?.0.evaluate_state(x)?;
        *out(state, "state")? = PpState {
            x: s.x,
            temperature: s.temperature,
            potential: s.potential,
            displacement: s.displacement,
            stress: s.stress,
            electric_displacement: s.electric_displacement,
            heat_flux: s.heat_flux,
        };
        Ok(())
    })
}

/// Temperature and potential on the lower face x = -h.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_lower_face(
    solution: *const PpSolution,
    temperature: *mut f64,
    potential: *mut f64,
) -> PpStatus {
    guard(|| {
        let f = borrow(solution, "solution")?.0.lower_face_summary();
        *out(temperature, "temperature")? = f.temperature;
        *out(potential, "potential")? = f.potential;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pp_solution_reduced(solution: *const PpSolution, reduced: *mut PpReduced) -> PpStatus {
    guard(|| {
        let p = borrow(solution, "solution")?.0.params;
        *out(reduced, "reduced")? = PpReduced {
            stiffness: p.stiffness,
            piezo: p.piezo,
            piezo_prime: p.piezo_prime,
            thermal_stress: p.thermal_stress,
            pyro: p.pyro,
            permittivity: p.permittivity,
            conductivity: p.conductivity,
            cross_conductivity: p.cross_conductivity,
            potential_gain: p.potential_gain,
            coupling: p.coupling,
            stiffened_modulus: p.stiffened_modulus,
            rate: p.rate,
            mechanical_drive: p.mechanical_drive,
        };
        Ok(())
    })
}

/// Coefficients of the solution in the global coordinate:
/// T = T1 e^{ax} + T2, φ = K T1 e^{ax} + F1 x + F2 and
/// u_j = g_j T1 e^{ax}/a + U1_j x + U2_j, written as
/// [T1, T2, F1, F2, U1_1, U2_1, U1_2, U2_2, U1_3, U2_3] into ten doubles.
/// Fails with NonFiniteData when e^{ah} overflows.
#[no_mangle]
pub unsafe extern "C" fn pp_solution_coefficients(solution: *const PpSolution, coefficients: *mut f64) -> PpStatus {
    guard(|| {
        let c = borrow(solution, "solution")?.0.coefficients()?;
        *out(coefficients.cast::<[f64; 10]>(), "coefficients")? = [
            c.temperature_amplitude,
            c.temperature_offset,
            c.potential_slope,
            c.potential_offset,
            c.displacement_slope[0],
            c.displacement_offset[0],
            c.displacement_slope[1],
            c.displacement_offset[1],
            c.displacement_slope[2],
            c.displacement_offset[2],
        ];
        Ok(())
    })
}

/// d(target field at x)/d(free datum).
#[no_mangle]
pub unsafe extern "C" fn pp_sensitivity(
    problem: *const PpProblem,
    free: i32,
    target_field: i32,
    x: f64,
    slope: *mut f64,
) -> PpStatus {
    guard(|| {
        let p = borrow(problem, "problem")?;
        *out(slope, "slope")? = sensitivity(&p.0, datum(free)?, target(target_field)?, x)?;
        Ok(())
    })
}

/// Value of the free datum that puts the target field at `value` at x.
/// `solution` may be null; otherwise it receives the re-solved problem.
#[no_mangle]
pub unsafe extern "C" fn pp_control_invert(
    problem: *const PpProblem,
    free: i32,
    target_field: i32,
    x: f64,
    value: f64,
    datum_value: *mut f64,
    solution: *mut *mut PpSolution,
) -> PpStatus {
    guard(|| {
        let p = borrow(problem, "problem")?;
        let r = invert(&ControlQuery {
            spec: p.0.clone(),
            free: datum(free)?,
            target: target(target_field)?,
            x_target: x,
            value,
        })?;
        *out(datum_value, "datum_value")? = r.datum_value;
        if !solution.is_null() {
            boxed(solution, PpSolution(r.solution))?;
        }
        Ok(())
    })
}

/// Finite-difference check on n/2 and n intervals (n even). Writes the
/// normalized max error on the fine grid and the observed order.
#[no_mangle]
pub unsafe extern "C" fn pp_verify(problem: *const PpProblem, n: usize, max_error: *mut f64, order: *mut f64) -> PpStatus {
    guard(|| {
        let r = verify(&borrow(problem, "problem")?.0, n)?;
        *out(max_error, "max_error")? = r.fine.max_relative;
        *out(order, "order")? = r.order;
        Ok(())
    })
}
