#include "biblio/fixtures.hpp"

#include <string>

namespace biblio {

namespace {

using AR = Database::AuthorRecord;
using ER = Database::EdgeRecord;

// Two authors, one paper each, citing each other. The smallest member
// of the domain.
Database mutual_pair() {
    return Database::make({{"a", {"pa"}}, {"b", {"pb"}}},
                          {{"pb", "pa"}, {"pa", "pb"}});
}

// Three-link chain: q cites p, r cites q. Not in the domain (author a
// cites nobody); used by the relaxed-mode computations.
Database chain3() {
    return Database::make({{"a", {"p"}}, {"b", {"q"}}, {"c", {"r"}}},
                          {{"p", "q"}, {"q", "r"}});
}

// Three authors u, v, w with one paper each; u and v cite w, w cites v.
Database lemma1_aux() {
    return Database::make({{"u", {"pu"}}, {"v", {"pv"}}, {"w", {"pw"}}},
                          {{"pw", "pu"}, {"pw", "pv"}, {"pv", "pw"}});
}

// Same papers and citations with u removed: v owns both pu and pv.
Database lemma1_aux2() {
    return Database::make({{"v", {"pu", "pv"}}, {"w", {"pw"}}},
                          {{"pw", "pu"}, {"pw", "pv"}, {"pv", "pw"}});
}

// Two-field database with a 4-vs-3 author split. Field one: a and b
// cite each other, c and e cite b. Field two: x and y cite each other,
// both papers of z cite y.
Database impossibility_d() {
    return Database::make({{"a", {"pa"}},
                           {"b", {"pb"}},
                           {"c", {"pc"}},
                           {"e", {"pe"}},
                           {"x", {"px"}},
                           {"y", {"py"}},
                           {"z", {"pz1", "pz2"}}},
                          {{"pb", "pa"},
                           {"pa", "pb"},
                           {"pb", "pe"},
                           {"pb", "pc"},
                           {"py", "px"},
                           {"px", "py"},
                           {"py", "pz1"},
                           {"py", "pz2"}});
}

// Reassigned variant: c takes e's paper, e takes one of z's papers.
// Fields become {a,b,c} and {e,x,y,z}.
Database impossibility_d2() {
    return Database::make({{"a", {"pa"}},
                           {"b", {"pb"}},
                           {"c", {"pc", "pe"}},
                           {"e", {"pz2"}},
                           {"x", {"px"}},
                           {"y", {"py"}},
                           {"z", {"pz1"}}},
                          {{"pb", "pa"},
                           {"pa", "pb"},
                           {"pb", "pe"},
                           {"pb", "pc"},
                           {"py", "px"},
                           {"px", "py"},
                           {"py", "pz1"},
                           {"py", "pz2"}});
}

} // namespace

Database fixture(std::string_view name) {
    if (name == "mutual-pair")
        return mutual_pair();
    if (name == "chain-3")
        return chain3();
    if (name == "lemma1-aux")
        return lemma1_aux();
    if (name == "lemma1-aux2")
        return lemma1_aux2();
    if (name == "impossibility-d")
        return impossibility_d();
    if (name == "impossibility-d2")
        return impossibility_d2();
    throw DomainError("unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string_view> fixture_names() {
    return {"impossibility-d", "impossibility-d2", "lemma1-aux",
            "lemma1-aux2",     "mutual-pair",      "chain-3"};
}

} // namespace biblio
