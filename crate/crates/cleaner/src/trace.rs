use serde::Serialize;
use serde_json::Value;
use std::sync::Mutex;

#[derive(Debug, Clone, Serialize)]
pub struct TraceEvent {
    pub event: String,
    pub depth: usize,
    pub rule: String,
    pub branch: usize,
    pub payload: Value,
}

/// Event log plus the list of broken execution invariants. Shared between
/// worker threads, so event order is only meaningful with one job.
#[derive(Debug, Default)]
pub struct Tracer {
    events: Mutex<Vec<TraceEvent>>,
    violations: Mutex<Vec<String>>,
}

impl Tracer {
    pub fn record(&self, event: &str, depth: usize, rule: &str, branch: usize, payload: Value) {
        let e = TraceEvent { event: event.into(), depth, rule: rule.into(), branch, payload };
        self.events.lock().expect("tracer lock").push(e);
    }

    /// Logs a broken invariant both as an event and in the violation list.
    pub fn violation(&self, what: String, depth: usize, rule: &str) {
        self.record("invariant_violation", depth, rule, 0, Value::String(what.clone()));
        self.violations.lock().expect("tracer lock").push(what);
    }

    pub fn check(&self, ok: bool, depth: usize, rule: &str, what: impl FnOnce() -> String) {
        if !ok {
            self.violation(what(), depth, rule);
        }
    }

    pub fn events(&self) -> Vec<TraceEvent> {
        self.events.lock().expect("tracer lock").clone()
    }

    pub fn violations(&self) -> Vec<String> {
        self.violations.lock().expect("tracer lock").clone()
    }

    pub fn count(&self, event: &str) -> usize {
        self.events.lock().expect("tracer lock").iter().filter(|e| e.event == event).count()
    }

    pub fn to_jsonl(&self) -> String {
        let events = self.events.lock().expect("tracer lock");
        let mut out = String::new();
        for e in events.iter() {
            out.push_str(&serde_json::to_string(e).expect("events serialize"));
            out.push('\n');
        }
        out
    }
}
