#ifndef BOSE_EOS_BOSE_EOS_HPP
#define BOSE_EOS_BOSE_EOS_HPP

#include "csv.hpp"
#include "eos.hpp"
#include "errors.hpp"
#include "gap_solver.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "series.hpp"
#include "si_direct.hpp"
#include "units.hpp"
#include "validate.hpp"

#endif // BOSE_EOS_BOSE_EOS_HPP
