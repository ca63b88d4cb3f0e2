#pragma once

#include "ffbasis/errors.hpp"
#include "ffbasis/field.hpp"
#include "ffbasis/poly.hpp"
#include "ffbasis/series.hpp"
#include "ffbasis/text.hpp"
#include "ffbasis/digits.hpp"
#include "ffbasis/carlitz.hpp"
#include "ffbasis/hasse.hpp"
#include "ffbasis/transforms.hpp"
#include "ffbasis/identities.hpp"
#include "ffbasis/suite.hpp"
#include "ffbasis/funcspec.hpp"
#include "ffbasis/config.hpp"
#include "ffbasis/serialize.hpp"
