#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dabounds {

enum class Verdict { holds, violated, vacuous_precondition };

const char* to_string(Verdict v);

// One evaluated inequality: left_side <= sum(terms) = right_side, with the
// decomposition kept so reports stay auditable term by term.
struct BoundReport {
    std::string bound_name;
    double left_side = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    double right_side = 0.0;
    Verdict verdict = Verdict::holds;

    double slack() const { return right_side - left_side; }

    // sums the terms and sets holds/violated at tolerance 1e-9
    static BoundReport make(std::string name, double left,
                            std::vector<std::pair<std::string, double>> terms);

    // textual rendering used by the CLI (aligned table / one CSV row)
    std::string to_table() const;
    std::string to_csv_row() const;
    static std::string csv_header();
};

}  // namespace dabounds
