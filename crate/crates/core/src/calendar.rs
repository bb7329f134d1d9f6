//! Business calendar: the stored demand grid covers every calendar day, but
//! forecasts are issued and evaluated on weekdays only. Saturdays and Sundays
//! are excluded from the evaluation grid.

use chrono::{Datelike, Days, NaiveDate, Weekday};

/// True for Monday through Friday.
pub fn is_weekday(date: NaiveDate) -> bool {
    !matches!(date.weekday(), Weekday::Sat | Weekday::Sun)
}

/// Day of week as 1 (Monday) .. 7 (Sunday).
pub fn day_of_week(date: NaiveDate) -> u8 {
    date.weekday().number_from_monday() as u8
}

/// All weekdays in `[start, end]`, in order.
pub fn weekdays_in(start: NaiveDate, end: NaiveDate) -> Vec<NaiveDate> {
    let mut out = Vec::new();
    let mut d = start;
    while d <= end {
        if is_weekday(d) {
            out.push(d);
        }
        d = d.succ_opt().expect("date overflow");
    }
    out
}

/// Number of weekdays in the half-open-at-the-left interval `(after, upto]`.
///
/// Returns 0 when `upto <= after`. This is the distance convention used by
/// interval features: `weekdays_between(last_demand, target)` counts how many
/// weekdays have elapsed since the last demand, including the target itself.
pub fn weekdays_between(after: NaiveDate, upto: NaiveDate) -> i64 {
    if upto <= after {
        return 0;
    }
    // Count weekdays in [after+1, upto] via whole weeks plus a remainder walk.
    let first = after.checked_add_days(Days::new(1)).expect("date overflow");
    let total_days = (upto - first).num_days() + 1;
    let whole_weeks = total_days / 7;
    let mut count = whole_weeks * 5;
    let mut d = first
        .checked_add_days(Days::new((whole_weeks * 7) as u64))
        .expect("date overflow");
    while d <= upto {
        if is_weekday(d) {
            count += 1;
        }
        d = d.succ_opt().expect("date overflow");
    }
    count
}
