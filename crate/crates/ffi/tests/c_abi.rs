use std::ffi::CStr;
use std::ptr;

use pigraph_ffi::*;

fn graph(n: usize, edges: &[usize]) -> *mut PigraphGraph {
    let mut g = ptr::null_mut();
    let st = unsafe { pigraph_graph_new(n, edges.as_ptr(), edges.len() / 2, &mut g) };
    assert_eq!(st, PigraphStatus::Ok);
    g
}

#[test]
fn c4_is_accepted_and_its_ordering_verifies() {
    let g = graph(4, &[0, 1, 1, 2, 2, 3, 3, 0]);
    unsafe {
        assert_eq!(pigraph_graph_vertex_count(g), 4);
        assert_eq!(pigraph_graph_edge_count(g), 4);
        let mut o = ptr::null_mut();
        assert_eq!(pigraph_recognize(g, &mut o), PigraphStatus::Ok);
        assert_eq!(pigraph_outcome_stage(o), PigraphStage::Accepted);
        let mut buf = [0usize; 4];
        let mut written = 0;
        let st = pigraph_outcome_ordering(o, buf.as_mut_ptr(), 4, &mut written);
        assert_eq!((st, written), (PigraphStatus::Ok, 4));
        assert_eq!(pigraph_verify_apex_ordering(g, buf.as_ptr(), 4), PigraphStatus::Ok);
        let bad = [0usize, 1, 2, 3];
        assert_eq!(pigraph_verify_apex_ordering(g, bad.as_ptr(), 4), PigraphStatus::Rejected);
        let dup = [0usize, 0, 2, 3];
        assert_eq!(
            pigraph_verify_apex_ordering(g, dup.as_ptr(), 4),
            PigraphStatus::NotPermutation
        );
        pigraph_outcome_free(o);
        pigraph_graph_free(g);
    }
}

#[test]
fn c5_rejection_reports_a_witness() {
    let g = graph(5, &[0, 1, 1, 2, 2, 3, 3, 4, 4, 0]);
    unsafe {
        let mut o = ptr::null_mut();
        assert_eq!(pigraph_recognize(g, &mut o), PigraphStatus::Ok);
        assert_eq!(pigraph_outcome_stage(o), PigraphStage::NotCocomparability);
        let mut written = 0;
        let st = pigraph_outcome_witness(o, ptr::null_mut(), 0, &mut written);
        assert_eq!(st, PigraphStatus::BufferTooSmall);
        assert!(written >= 4 && written % 2 == 0);
        let mut buf = vec![0usize; written];
        let st = pigraph_outcome_witness(o, buf.as_mut_ptr(), buf.len(), &mut written);
        assert_eq!(st, PigraphStatus::Ok);
        // chain ends with the reverse of its first arc
        assert_eq!((buf[0], buf[1]), (buf[written - 1], buf[written - 2]));
        let st = pigraph_outcome_ordering(o, ptr::null_mut(), 0, &mut written);
        assert_eq!((st, written), (PigraphStatus::Rejected, 0));
        pigraph_outcome_free(o);
        pigraph_graph_free(g);
    }
}

#[test]
fn construction_errors_map_to_status_codes() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(pigraph_graph_new(2, [0usize, 2].as_ptr(), 1, &mut g), PigraphStatus::VertexOutOfRange);
        assert_eq!(pigraph_graph_new(2, [1usize, 1].as_ptr(), 1, &mut g), PigraphStatus::SelfLoop);
        assert_eq!(
            pigraph_graph_new(2, [0usize, 1, 1, 0].as_ptr(), 2, &mut g),
            PigraphStatus::DuplicateEdge
        );
        assert_eq!(pigraph_graph_new(2, ptr::null(), 1, &mut g), PigraphStatus::NullPointer);
        assert!(g.is_null());
        assert_eq!(pigraph_graph_parse(c"2 1\n0 x\n".as_ptr(), &mut g), PigraphStatus::ParseError);
        assert_eq!(pigraph_graph_parse(c"3 1\n0 2\n".as_ptr(), &mut g), PigraphStatus::Ok);
        assert_eq!(pigraph_graph_edge_count(g), 1);
        pigraph_graph_free(g);
        pigraph_graph_free(ptr::null_mut());
        assert_eq!(pigraph_recognize(ptr::null(), &mut ptr::null_mut()), PigraphStatus::NullPointer);
        let msg = CStr::from_ptr(pigraph_status_message(PigraphStatus::BufferTooSmall));
        assert_eq!(msg.to_str().unwrap(), "buffer too small");
    }
}

#[test]
fn empty_graph() {
    let g = graph(0, &[]);
    unsafe {
        let mut o = ptr::null_mut();
        pigraph_recognize(g, &mut o);
        let mut written = 7;
        let st = pigraph_outcome_ordering(o, ptr::null_mut(), 0, &mut written);
        assert_eq!((st, written), (PigraphStatus::Ok, 0));
        assert_eq!(pigraph_verify_apex_ordering(g, ptr::null(), 0), PigraphStatus::Ok);
        pigraph_outcome_free(o);
        pigraph_graph_free(g);
    }
}
