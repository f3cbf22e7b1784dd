#pragma once

namespace datefmt {

// Full Gregorian leap rule: divisible by 4, except centuries, unless
// divisible by 400.
inline bool is_leap(long year) {
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

// Upper bound on the day number for a month. Months other than February
// alternate between 30 and 31 days; the alternation flips after July, which
// the floor(x/8) term masks in. February depends on the leap rule.
inline int days_in_month_bound(int month, long year) {
  if (month == 2) return is_leap(year) ? 29 : 28;
  return 30 + (month + month / 8) % 2;
}

}  // namespace datefmt
