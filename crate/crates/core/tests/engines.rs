use incompat_core::generate::Generator;
use incompat_core::semantics::decide;
use incompat_core::tableau::derive;
use incompat_core::LogicId;

#[test]
fn tables_and_tableaux_agree() {
    for logic in LogicId::WITH_TABLEAUX {
        let mut g = Generator::new(11, logic.signature(), 4, 8);
        for _ in 0..1500 {
            let f = g.formula();
            let v = decide(logic, &[], &f).unwrap();
            let t = derive(logic, &[], &f).unwrap();
            assert_eq!(v.valid, t.is_closed(), "{logic}: {f}");
            if !t.is_closed() {
                let m = t.countermodel().unwrap();
                assert!(m.is_ok(), "{logic}: {f}: {m:?}");
            }
        }
    }
}
