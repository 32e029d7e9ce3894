#ifndef QSTAR_QSTAR_HPP
#define QSTAR_QSTAR_HPP

#include "qstar/bounds.hpp"
#include "qstar/classify.hpp"
#include "qstar/config.hpp"
#include "qstar/errors.hpp"
#include "qstar/janowski.hpp"
#include "qstar/operators.hpp"
#include "qstar/oracle.hpp"
#include "qstar/qarith.hpp"
#include "qstar/series.hpp"

#endif  // QSTAR_QSTAR_HPP
