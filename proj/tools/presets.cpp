#include "presets.hpp"

namespace icbargain::cli {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"fig3", "mac", "Bargaining rates over the MAC, SNR1 = 20 dB, SNR2 = 15 dB",
       {{"snr1-db", "20"}, {"snr2-db", "15"}}},
      {"fig4a", "sweep", "Regular (a,b) set, SNR1 = SNR2 = 20 dB",
       {{"snr1-db", "20"}, {"snr2-db", "20"},
        {"var", "a"}, {"from", "0.05"}, {"to", "3"}, {"steps", "60"},
        {"var2", "b"}, {"from2", "0.05"}, {"to2", "3"}, {"steps2", "60"}}},
      {"fig4b", "sweep", "Regular (a,b) set, SNR1 = 20 dB, SNR2 = 30 dB",
       {{"snr1-db", "20"}, {"snr2-db", "30"},
        {"var", "a"}, {"from", "0.05"}, {"to", "3"}, {"steps", "60"},
        {"var2", "b"}, {"from2", "0.05"}, {"to2", "3"}, {"steps2", "60"}}},
      {"fig5a", "nbs", "H-K and TDM NBS, strong interference a = 3, b = 5, SNR1 = SNR2 = 20 dB",
       {{"a", "3"}, {"b", "5"}, {"snr1-db", "20"}, {"snr2-db", "20"}, {"scheme", "both"}}},
      {"fig5b", "nbs", "H-K and TDM NBS, mixed interference a = 0.1, b = 3, SNR1 = SNR2 = 20 dB",
       {{"a", "0.1"}, {"b", "3"}, {"snr1-db", "20"}, {"snr2-db", "20"}, {"scheme", "both"}}},
      {"fig5c", "nbs", "H-K and TDM NBS, weak interference a = 0.2, b = 0.5, SNR1 = SNR2 = 20 dB",
       {{"a", "0.2"}, {"b", "0.5"}, {"snr1-db", "20"}, {"snr2-db", "20"}, {"scheme", "both"}}},
      {"fig6", "sweep", "NBS and disagreement rates versus b, a = 1.5, SNR1 = SNR2 = 20 dB",
       {{"a", "1.5"}, {"snr1-db", "20"}, {"snr2-db", "20"},
        {"var", "b"}, {"from", "0"}, {"to", "3"}, {"steps", "61"}}},
      {"fig7", "aobg", "NBS and AOBG equilibria, a = 0.2, b = 1.2, SNR1 = 10 dB, SNR2 = 20 dB",
       {{"a", "0.2"}, {"b", "1.2"}, {"snr1-db", "10"}, {"snr2-db", "20"},
        {"p1", "0.5,0.1,0.1"}, {"p2", "0.5,0.5,0.1"}}},
      {"fig8", "sweep",
       "Equilibrium rates versus p1, p2 = 0.5, a = 0.2, b = 1.2, SNR1 = 10 dB, SNR2 = 20 dB",
       {{"a", "0.2"}, {"b", "1.2"}, {"snr1-db", "10"}, {"snr2-db", "20"}, {"p2", "0.5"},
        {"var", "p1"}, {"from", "0.1"}, {"to", "0.9"}, {"steps", "9"}}},
      {"fig9", "aobg",
       "H-K and TDM AOBG outcomes, a = 0.2, b = 1.2, SNR1 = 20 dB, SNR2 = 30 dB, p1 = p2 = 0.5",
       {{"a", "0.2"}, {"b", "1.2"}, {"snr1-db", "20"}, {"snr2-db", "30"},
        {"p1", "0.5"}, {"p2", "0.5"}, {"scheme", "both"}}},
      {"fig10", "gdof", "g.d.o.f. NBS, mixed interference theta = (1, 1.2, 0.8)",
       {{"theta1", "1"}, {"theta2", "1.2"}, {"theta3", "0.8"}, {"scheme", "both"}}},
  };
  return table;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace icbargain::cli
