#pragma once

// Frozen reference values for the two-sided Student-t tail probability,
// computed with 50-digit arithmetic via the regularized incomplete beta
// form I_{df/(df+t^2)}(df/2, 1/2) and rounded to the nearest double.

namespace oracle {

struct TOracleRow {
  double t;
  double df;
  double p;
};

inline constexpr TOracleRow kTOracle[] = {
    {0.1, 1, 0.93654896513889286},
    {0.5, 1, 0.70483276469913345},
    {0.9258200997725514, 1, 0.52450958769872322},
    {1.0, 1, 0.5},
    {1.5, 1, 0.37433408362199763},
    {2.0, 1, 0.29516723530086655},
    {2.5, 1, 0.2422378831816868},
    {3.0, 1, 0.20483276469913345},
    {5.0, 1, 0.12566591637800237},
    {10.0, 1, 0.063451034861107139},
    {30.0, 1, 0.021212804811070847},
    {0.1, 2, 0.92946543841414017},
    {0.5, 2, 0.66666666666666667},
    {0.9258200997725514, 2, 0.45227744249483391},
    {1.0, 2, 0.42264973081037424},
    {1.5, 2, 0.27239312489100108},
    {2.0, 2, 0.18350341907227397},
    {2.5, 2, 0.12961172022151081},
    {3.0, 2, 0.095465966266709132},
    {5.0, 2, 0.037749551350623726},
    {10.0, 2, 0.0098524570233256908},
    {30.0, 2, 0.0011092626819596589},
    {0.1, 3, 0.92665234880080583},
    {0.5, 3, 0.65144796484815099},
    {0.9258200997725514, 3, 0.42282626177210265},
    {1.0, 3, 0.39100221895577064},
    {1.5, 3, 0.23058386524482305},
    {2.0, 3, 0.13932596855884318},
    {2.5, 3, 0.087706647008065547},
    {3.0, 3, 0.057668885622437309},
    {5.0, 3, 0.015392438073302301},
    {10.0, 3, 0.0021283990584141501},
    {30.0, 3, 8.1352804271639595e-5},
    {0.1, 4.5, 0.92464406763068556},
    {0.5, 4.5, 0.64054950207404715},
    {0.9258200997725514, 4.5, 0.40146826575278719},
    {1.0, 4.5, 0.36800508388018858},
    {1.5, 4.5, 0.20021908565615352},
    {2.0, 4.5, 0.10825790718112503},
    {2.5, 4.5, 0.059905686502200544},
    {3.0, 4.5, 0.034380867888759624},
    {5.0, 4.5, 0.0054763583595199005},
    {10.0, 4.5, 0.00030528057568339576},
    {30.0, 4.5, 2.3439742987885206e-6},
    {0.1, 7, 0.92314805960479239},
    {0.5, 7, 0.63240713568928422},
    {0.9258200997725514, 7, 0.38534613412878357},
    {1.0, 7, 0.35061666282020753},
    {1.5, 7, 0.17729848698997003},
    {2.0, 7, 0.085619328562976077},
    {2.5, 7, 0.040992218585752897},
    {3.0, 7, 0.019942126131992538},
    {5.0, 7, 0.0015652779531728246},
    {10.0, 7, 2.1394202890772812e-5},
    {30.0, 7, 1.178846888073314e-8},
    {0.1, 10, 0.92232071856440832},
    {0.5, 10, 0.62789360574297294},
    {0.9258200997725514, 10, 0.37634173801911862},
    {1.0, 10, 0.34089313230205987},
    {1.5, 10, 0.16450732644544018},
    {2.0, 10, 0.073388034770740366},
    {2.5, 10, 0.031446844236608804},
    {3.0, 10, 0.013343655022569577},
    {5.0, 10, 0.00053733360275645262},
    {10.0, 10, 1.589553175596412e-6},
    {30.0, 10, 3.9617923420313243e-11},
    {0.1, 23, 0.9212108741664454},
    {0.5, 23, 0.62182527524232832},
    {0.9258200997725514, 23, 0.36415261464637266},
    {1.0, 23, 0.32771580614285855},
    {1.5, 23, 0.14721736401506431},
    {2.0, 23, 0.057444548992082724},
    {2.5, 23, 0.019994122327887084},
    {3.0, 23, 0.006390331325917715},
    {5.0, 23, 4.6643331542067692e-5},
    {10.0, 23, 7.6446231078384821e-10},
    {30.0, 23, 6.0456676261973159e-20},
    {0.1, 59.3, 0.92068163876700064},
    {0.5, 59.3, 0.61892549026410323},
    {0.9258200997725514, 59.3, 0.35829205214302907},
    {1.0, 59.3, 0.32137370783769395},
    {1.5, 59.3, 0.13892004150850418},
    {2.0, 59.3, 0.050086926406598343},
    {2.5, 59.3, 0.015204456307127698},
    {3.0, 59.3, 0.0039436097786487432},
    {5.0, 59.3, 5.3993814808991786e-6},
    {10.0, 59.3, 2.4319580500942064e-14},
    {30.0, 59.3, 1.5243848468795831e-37},
    {0.1, 100, 0.92054453109585124},
    {0.5, 100, 0.61817356583088657},
    {0.9258200997725514, 100, 0.35676840367901149},
    {1.0, 100, 0.31972415578412336},
    {1.5, 100, 0.13676505812468886},
    {2.0, 100, 0.04821217873113368},
    {2.5, 100, 0.014045789124077177},
    {3.0, 100, 0.0034079153433294495},
    {5.0, 100, 2.4501734135038004e-6},
    {10.0, 100, 9.9016889845941392e-17},
    {30.0, 100, 8.3803325586882922e-52},
    {0.1, 999, 0.92036438908471127},
    {0.5, 999, 0.61718519093028941},
    {0.9258200997725514, 999, 0.35476307239131544},
    {1.0, 999, 0.31755266017641238},
    {1.5, 999, 0.13393035471128499},
    {2.0, 999, 0.045770616973757003},
    {2.5, 999, 0.012578727584509219},
    {3.0, 999, 0.0027667764601477941},
    {5.0, 999, 6.7683618958010971e-7},
    {10.0, 999, 1.670821882687129e-22},
    {30.0, 999, 1.6728272131171847e-141},
};

}  // namespace oracle
