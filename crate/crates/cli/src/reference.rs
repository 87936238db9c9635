//! Parameter rows and reference bounds of the density table reproduced by `table default`.

#[derive(Debug)]
pub struct ReferenceRow {
    pub q: u64,
    pub primes: usize,
    pub a: u64,
    pub s: u64,
    pub lower: &'static str,
    pub upper: &'static str,
    pub digits: u32,
}

#[rustfmt::skip]
pub const ROWS: &[ReferenceRow] = &[
    ReferenceRow { q: 2, primes: 25000, a: 20, s: 20,
        lower: "0.577350376056807813001171222749099027793826886470544627211675882194082714",
        upper: "0.577350485047678584952747233500637548585202776756754996491063963297074978", digits: 6 },
    ReferenceRow { q: 3, primes: 6000, a: 100, s: 100,
        lower: "0.388807379263994405608",
        upper: "0.388807379271511226974", digits: 10 },
    ReferenceRow { q: 5, primes: 5000, a: 100, s: 100,
        lower: "0.2151189846955856203278886157360448757908",
        upper: "0.2151189846955856203310804143009889413781", digits: 19 },
    ReferenceRow { q: 7, primes: 2500, a: 100, s: 100,
        lower: "0.1465008912284380428191169151038108078952016850611",
        upper: "0.1465008912284380428191169151051370285686287787482", digits: 29 },
    ReferenceRow { q: 11, primes: 2000, a: 200, s: 200,
        lower: "0.09113458105567412165027231631480880531869134253505",
        upper: "0.09113458105567412165027231631480880531869134616405", digits: 44 },
    ReferenceRow { q: 13, primes: 2000, a: 200, s: 200,
        lower: "0.0769798105202947775196592008915016896290643581467495222992",
        upper: "0.0769798105202947775196592008915016896290643581467495324792", digits: 52 },
    ReferenceRow { q: 17, primes: 2000, a: 200, s: 200,
        lower: "0.0588271246021194036767367088849109584242431438294286088658355576978825563",
        upper: "0.0588271246021194036767367088849109584242431438294286088658358505456589114", digits: 60 },
    ReferenceRow { q: 19, primes: 2000, a: 200, s: 200,
        lower: "0.0526324829734675179643555340250633283774469991562117016273662733238280360295",
        upper: "0.0526324829734675179643555340250633283774469991562117016273665680982357656219", digits: 60 },
    ReferenceRow { q: 23, primes: 2000, a: 200, s: 200,
        lower: "0.0434783178894840833442936676959388965942544846621537400365341488199880437161",
        upper: "0.0434783178894840833442936676959388965942544846621537400365344464424578523589", digits: 60 },
    ReferenceRow { q: 29, primes: 2000, a: 200, s: 200,
        lower: "0.0344827595199070388388844049792239641953873954627365728107837569520705630160",
        upper: "0.0344827595199070388388844049792239641953873954627365728107840573734977701028", digits: 60 },
    ReferenceRow { q: 31, primes: 2000, a: 200, s: 200,
        lower: "0.0322580647414500545950163257009657078579131023779285736837851195575316015814",
        upper: "0.0322580647414500545950163257009657078579131023779285736837854206711740787331", digits: 60 },
    ReferenceRow { q: 37, primes: 2000, a: 200, s: 200,
        lower: "0.0270270270305666835231340923503436156463771224864202885139864189587084207034",
        upper: "0.0270270270305666835231340923503436156463771224864202885139867216999922085428", digits: 60 },
    ReferenceRow { q: 41, primes: 2000, a: 200, s: 200,
        lower: "0.0526324829734675179643555340250633283774469991562117016273662733238280360295",
        upper: "0.0526324829734675179643555340250633283774469991562117016273665680982357656219", digits: 60 },
    ReferenceRow { q: 43, primes: 2000, a: 200, s: 200,
        lower: "0.0243902439026608523841187301974189252492456339087527260100490728868251728131",
        upper: "0.0243902439026608523841187301974189252492456339087527260100493764485460440884", digits: 60 },
    ReferenceRow { q: 47, primes: 2000, a: 200, s: 200,
        lower: "0.0212765957446843281878803870513876380451765585785993642707367688487106754059",
        upper: "0.0212765957446843281878803870513876380451765585785993642707370733792455494618", digits: 60 },
    ReferenceRow { q: 53, primes: 2000, a: 200, s: 200,
        lower: "0.0188679245283019412562238832810092145871135099055870468782572222350689036016",
        upper: "0.0188679245283019412562238832810092145871135099055870468782575275150636666011", digits: 60 },
    ReferenceRow { q: 59, primes: 2000, a: 200, s: 200,
        lower: "0.0169491525423728822085928950180309408613925856773051105788352397597828390175",
        upper: "0.0169491525423728822085928950180309408613925856773051105788355456368049711755", digits: 60 },
    ReferenceRow { q: 61, primes: 2000, a: 200, s: 200,
        lower: "0.0163934426229508198854168208219767903619261302180219681216219806030511287992",
        upper: "0.0163934426229508198854168208219767903619261302180219681216222866529828268882", digits: 60 },
    ReferenceRow { q: 67, primes: 2000, a: 200, s: 200,
        lower: "0.0149253731343283582122927865384419386637802338726817463136753178858896539878",
        upper: "0.0149253731343283582122927865384419386637802338726817463136756243926122949098", digits: 60 },
    ReferenceRow { q: 71, primes: 2000, a: 200, s: 200,
        lower: "0.0140845070422535211269693391067176967649594829351580201486906371592417410550",
        upper: "0.0140845070422535211269693391067176967649594829351580201486909439276005088579", digits: 60 },
    ReferenceRow { q: 73, primes: 2000, a: 200, s: 200,
        lower: "0.0136986301369863013699152280583923981060340353762078282187845491706626305503",
        upper: "0.0136986301369863013699152280583923981060340353762078282187848560590872921958", digits: 60 },
    ReferenceRow { q: 79, primes: 2000, a: 200, s: 200,
        lower: "0.0126582278481012658227856268365541662938488265742992373710486955727305542222",
        upper: "0.0126582278481012658227856268365541662938488265742992373710490027848771828103", digits: 60 },
    ReferenceRow { q: 83, primes: 2000, a: 200, s: 200,
        lower: "0.0120481927710843373493976414373571004130184548993846798041887017697123434429",
        upper: "0.0120481927710843373493976414373571004130184548993846798041890091716718522464", digits: 60 },
    ReferenceRow { q: 89, primes: 2000, a: 200, s: 200,
        lower: "0.0112359550561797752808988772032116167559082693745180629757011563061883886497",
        upper: "0.0112359550561797752808988772032116167559082693745180629757014639608762829085", digits: 60 },
    ReferenceRow { q: 97, primes: 2000, a: 200, s: 200,
        lower: "0.0103092783505154639175257731989992019340708096559895437616545481014641811975",
        upper: "0.0103092783505154639175257731989992019340708096559895437616548560444882403055", digits: 60 },
    ReferenceRow { q: 101, primes: 2000, a: 200, s: 200,
        lower: "0.0099009900990099009900990099011853616102032207443407084385975285689705070493",
        upper: "0.0099009900990099009900990099011853616102032207443407084385978366390337675019", digits: 60 },
];
