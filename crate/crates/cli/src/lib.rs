//! Library half of the `disbelief` command: the structured output document.

pub mod output;
