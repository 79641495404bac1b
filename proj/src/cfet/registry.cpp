#include <cmath>
#include <stdexcept>

#include "cfet/scheme.hpp"

namespace cfet {

namespace {

using Row = std::vector<Coefficient>;

Rational q(const char* text) { return parse_rational(text); }

CfetScheme cf6_4() {
  const double s6 = std::sqrt(6.0);
  const double f11 = 0.5 + std::cbrt(5400.0 - 600.0 * s6) / 60.0 +
                     std::cbrt((9.0 + s6) / 5.0) / (2.0 * std::cbrt(9.0));
  const double f12 = f11 - 2.0 / 3.0 * f11 * f11;
  const double f13 = 1.0 / (10.0 - 10.0 * f11);
  const double f21 = 0.5 - f11;
  const double f22 = (1.0 - 4.0 * f11 + 2.0 * f11 * f11) / 3.0;
  const double f23 = -f13;
  return symmetric_scheme("CF6:4", 6, 4, {Row{f11, f12, f13}, Row{f21, f22, f23}});
}

// Five-stage sixth-order layout: two leading rows, center row fixed by the conditions on A_1, A_3.
CfetScheme five_stage(const char* name, Row r1, Row r2) {
  r1.resize(4, Coefficient(0));
  r2.resize(4, Coefficient(0));
  Row center{1.0 - 2.0 * r2[0].value - 2.0 * r1[0].value, 0.0,
             -2.0 * r2[2].value - 2.0 * r1[2].value, 0.0};
  return symmetric_scheme(name, 6, 5, {r1, r2, center});
}

// Six-stage sixth-order layout: f31 = 1/2 - f11 - f21, f33 = -f13 - f23.
CfetScheme six_stage(const char* name, Row r1, Row r2, double f32, double f34) {
  r1.resize(4, Coefficient(0));
  r2.resize(4, Coefficient(0));
  Row r3{0.5 - r1[0].value - r2[0].value, f32, -r1[2].value - r2[2].value, f34};
  return symmetric_scheme(name, 6, 6, {r1, r2, r3});
}

CfetScheme cf8_11() {
  return symmetric_scheme(
      "CF8:11", 8, 11,
      {Row{0.169715531043933180094151, 0.152866146944615909929839, 0.119167378745981369601216,
           0.068619226448029559107538},
       Row{0.379420807516005431504230, 0.148839980923180990943008, -0.115880829186628075021088,
           -0.188555246668412628269760},
       Row{0.469459306644050573017994, -0.379844237839363505173921, 0.022898814729462898505141,
           0.571855043580130805495594},
       Row{-0.448225927391070886302766, 0.362889857410989942809900, -0.022565582830528472333301,
           -0.544507517141613383517695},
       Row{-0.293924473106317605373923, -0.026255628265819381983204, 0.096761509131620390100068,
           0.000018330145571671744069},
       Row{0.447109510586798614120629, 0.0, -0.200762581179816221704073, 0.0}});
}

CfetScheme build(const std::string& name) {
  if (name == "CF2:1") return CfetScheme("CF2:1", 2, {Row{Rational(1)}}, true);
  if (name == "CF4:2")
    return symmetric_scheme("CF4:2", 4, 2, {Row{q("1/2"), q("1/3")}});
  if (name == "CF4:3")
    return symmetric_scheme("CF4:3", 4, 3,
                            {Row{q("11/40"), q("20/87")}, Row{q("9/20"), Rational(0)}});
  if (name == "CF4:3Opt")
    return symmetric_scheme("CF4:3Opt", 4, 3,
                            {Row{q("11/40"), q("20/87"), q("7/50")},
                             Row{q("9/20"), Rational(0), q("-7/25")}});
  if (name == "CF6:4") return cf6_4();
  if (name == "CF6:5")
    return five_stage("CF6:5", Row{0.16, 0.14587456942714338561, 0.11762370828143015682},
                      Row{0.38752405202531186588, 0.15089113704380764664,
                          -0.12805075909013044594});
  if (name == "CF6:5b")
    return five_stage("CF6:5b", Row{0.2, 0.1746879190177786220, 0.12406375705333586606},
                      Row{0.34815492558797391479, 0.1068765450953683,
                          -0.139021313323765096675});
  if (name == "CF6:5Imp")
    return five_stage("CF6:5Imp",
                      Row{0.16, 0.14587456942714338561, 0.11762370828143015682, 0.074},
                      Row{0.38752405202531186588, 0.15089113704380764664,
                          -0.12805075909013044594, -0.212530296697694739551});
  if (name == "CF6:5Opt")
    return five_stage("CF6:5Opt",
                      Row{0.1714, 0.15409059414309687213, 0.11947178242929061641, 0.07195},
                      Row{0.37496374319946236513, 0.13813675394387646682,
                          -0.13090674649282935743, -0.21123356253315514306});
  if (name == "CF6:6")
    return six_stage("CF6:6", Row{0.16, 0.15101538937746543493, 0.13304616813239630479},
                     Row{-0.22738164742696330169, -0.087654259755115431662,
                         0.069919836812656575583},
                     0.21035154512209824847, 0.0);
  if (name == "CF6:6Opt")
    return six_stage("CF6:6Opt",
                     Row{0.3952, 0.35629343479227292880, 0.27848030437681878641, 0.1579},
                     Row{-0.22432144875476807927, -0.19935407393749030416,
                         -0.15625650102884866893, -0.09512},
                     0.1145, -0.16475168057141371958);
  if (name == "CF8:11") return cf8_11();
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

}  // namespace

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"CF2:1",    "CF4:2",    "CF4:3",  "CF4:3Opt",
                                              "CF6:4",    "CF6:5",    "CF6:5b", "CF6:5Imp",
                                              "CF6:5Opt", "CF6:6",    "CF6:6Opt", "CF8:11"};
  return names;
}

CfetScheme scheme_lookup(const std::string& name) { return build(name); }

}  // namespace cfet
