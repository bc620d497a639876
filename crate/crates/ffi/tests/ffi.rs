use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use padic_trunk_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut libc::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pt_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(pt_last_error_message())
        .to_str()
        .unwrap()
        .to_owned()
}

unsafe fn parse(text: &str) -> *mut PtPolynomial {
    let mut p = ptr::null_mut();
    assert_eq!(pt_polynomial_parse(c(text).as_ptr(), &mut p), PtStatus::Ok);
    p
}

unsafe fn list(l: *mut PtSolutionList) -> Vec<String> {
    let out = (0..pt_solution_list_len(l))
        .map(|i| {
            CStr::from_ptr(pt_solution_list_get(l, i))
                .to_str()
                .unwrap()
                .to_owned()
        })
        .collect();
    pt_solution_list_free(l);
    out
}

#[test]
fn quartic_round_trip() {
    unsafe {
        let p = parse("(X^2+3)*(X^2+3X+9)");
        assert_eq!(pt_polynomial_degree(p), 4);
        assert_eq!(
            take(pt_polynomial_to_string(p)),
            "X^4 + 3*X^3 + 12*X^2 + 9*X + 27"
        );

        let mut t = ptr::null_mut();
        assert_eq!(pt_trunk_build(p, 3, 5, &mut t), PtStatus::Ok);
        assert_eq!(pt_trunk_node_count(t), 3);
        let mut info = std::mem::MaybeUninit::<PtNodeInfo>::uninit();
        assert_eq!(pt_trunk_node(t, 1, info.as_mut_ptr()), PtStatus::Ok);
        let info = info.assume_init();
        assert_eq!((info.k, info.t, info.phi, info.parent), (1, 3, 3, 0));
        assert_eq!(take(pt_trunk_node_residue(t, 2)), "3");
        let mut info2 = std::mem::MaybeUninit::<PtNodeInfo>::uninit();
        assert_eq!(pt_trunk_node(t, 2, info2.as_mut_ptr()), PtStatus::Ok);
        assert_eq!(info2.assume_init().status, PtBranchStatus::Leaf);
        assert_eq!(
            pt_trunk_node(t, 3, info2.as_mut_ptr()),
            PtStatus::IndexOutOfRange
        );

        let mut n = ptr::null_mut();
        assert_eq!(pt_count_solutions(t, 4, &mut n), PtStatus::Ok);
        assert_eq!(take(n), "9");
        let mut l = ptr::null_mut();
        assert_eq!(pt_enumerate_solutions(t, 4, &mut l), PtStatus::Ok);
        assert_eq!(
            list(l),
            ["3", "12", "21", "30", "39", "48", "57", "66", "75"]
        );
        let mut yes = false;
        assert_eq!(
            pt_is_solution(t, c("21").as_ptr(), 4, &mut yes),
            PtStatus::Ok
        );
        assert!(yes);
        assert_eq!(
            pt_is_solution(t, c("0").as_ptr(), 4, &mut yes),
            PtStatus::Ok
        );
        assert!(!yes);

        pt_trunk_free(t);
        pt_polynomial_free(p);
    }
}

#[test]
fn composite_and_classification() {
    unsafe {
        let p = parse("X^2+11");
        let mut l = ptr::null_mut();
        assert_eq!(pt_crt_solve(p, c("15").as_ptr(), &mut l), PtStatus::Ok);
        assert_eq!(list(l), ["2", "7", "8", "13"]);
        pt_polynomial_free(p);

        let mut kind = PtQuadraticKind::K0;
        let mut base = 0i64;
        let p = parse("(X-1)^2+243");
        assert_eq!(
            pt_classify_quadratic(p, 3, &mut kind, &mut base),
            PtStatus::Ok
        );
        assert_eq!((kind, base), (PtQuadraticKind::K1, 2));
        pt_polynomial_free(p);
        let p = parse("X^2");
        assert_eq!(
            pt_classify_quadratic(p, 3, &mut kind, &mut base),
            PtStatus::Ok
        );
        assert_eq!((kind, base), (PtQuadraticKind::KInf, -1));
        assert_eq!(
            pt_classify_quadratic(p, 2, &mut kind, &mut base),
            PtStatus::NotQuadratic
        );
        pt_polynomial_free(p);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            pt_polynomial_parse(c("X + Y").as_ptr(), &mut p),
            PtStatus::ParseError
        );
        assert!(p.is_null());
        assert_eq!(last_error(), "unknown identifier 'Y' at position 4");
        assert_eq!(
            pt_polynomial_parse(ptr::null(), &mut p),
            PtStatus::NullPointer
        );

        let coeffs = [0i64, 0, 0];
        assert_eq!(
            pt_polynomial_from_coeffs(coeffs.as_ptr(), 3, &mut p),
            PtStatus::Ok
        );
        assert_eq!(pt_polynomial_degree(p), -1);
        let mut t = ptr::null_mut();
        assert_eq!(pt_trunk_build(p, 3, 2, &mut t), PtStatus::ZeroPolynomial);
        pt_polynomial_free(p);

        let p = parse("X");
        assert_eq!(pt_trunk_build(p, 4, 2, &mut t), PtStatus::NotPrime);
        assert_eq!(
            pt_trunk_build(p, 1_000_003, 2, &mut t),
            PtStatus::PrimeTooLarge
        );
        assert_eq!(
            pt_trunk_build(p, 3, 2, ptr::null_mut()),
            PtStatus::NullPointer
        );
        pt_polynomial_free(p);

        let p = parse("(X^2-2)^2");
        assert_eq!(pt_trunk_build(p, 7, 2, &mut t), PtStatus::Ok);
        let mut n = ptr::null_mut();
        assert_eq!(
            pt_count_solutions(t, 5, &mut n),
            PtStatus::InsufficientDepth
        );
        assert!(last_error().starts_with("insufficient depth"));
        pt_trunk_free(t);
        pt_polynomial_free(p);

        let p = parse("X^2");
        assert_eq!(pt_trunk_build(p, 3, 2, &mut t), PtStatus::Ok);
        let mut l = ptr::null_mut();
        assert_eq!(
            pt_enumerate_solutions(t, 40, &mut l),
            PtStatus::EnumerationTooLarge
        );
        pt_trunk_free(t);
        pt_polynomial_free(p);

        // null handles are tolerated by the infallible accessors
        assert_eq!(pt_trunk_node_count(ptr::null()), 0);
        assert_eq!(pt_solution_list_len(ptr::null()), 0);
        pt_trunk_free(ptr::null_mut());
        pt_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/padic_trunk.h")).unwrap();
    for f in [
        "pt_polynomial_parse",
        "pt_trunk_build",
        "pt_crt_solve",
        "pt_last_error_message",
    ] {
        assert!(header.contains(f), "{f} missing from the header");
    }
    let src = std::env::temp_dir().join(format!("pt_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"padic_trunk.h\"\n\
         int main(void) {\n\
           PtPolynomial *p = 0;\n\
           PtStatus s = pt_polynomial_parse(\"X^2+11\", &p);\n\
           PtSolutionList *l = 0;\n\
           if (s == PT_STATUS_OK) s = pt_crt_solve(p, \"15\", &l);\n\
           pt_solution_list_free(l);\n\
           pt_polynomial_free(p);\n\
           return (int)s;\n\
         }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .expect("a C compiler is available");
    std::fs::remove_file(&src).ok();
    assert!(status.success());
}

#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libpadic_trunk_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );
    let tmp = std::env::temp_dir().join(format!("pt_link_{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "padic_trunk.h"
int main(void) {
  PtPolynomial *p = NULL;
  PtTrunk *t = NULL;
  char *n = NULL;
  if (pt_polynomial_parse("X*(X-1)^2+25", &p) != PT_STATUS_OK) return 1;
  if (pt_trunk_build(p, 5, 6, &t) != PT_STATUS_OK) return 2;
  if (pt_count_solutions(t, 3, &n) != PT_STATUS_OK) return 3;
  printf("%s\n", n);
  pt_string_free(n);
  pt_trunk_free(t);
  if (pt_trunk_build(p, 4, 6, &t) != PT_STATUS_NOT_PRIME) return 4;
  printf("%s\n", pt_last_error_message());
  pt_polynomial_free(p);
  return 0;
}
"#,
    )
    .unwrap();
    let bin = tmp.join("main");
    let status = Command::new("cc")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler is available");
    assert!(
        status.success(),
        "linking against the static library failed"
    );
    let out = Command::new(&bin).output().unwrap();
    std::fs::remove_dir_all(&tmp).ok();
    assert!(
        out.status.success(),
        "C program exited with {:?}",
        out.status
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "11\n4 is not prime\n"
    );
}
