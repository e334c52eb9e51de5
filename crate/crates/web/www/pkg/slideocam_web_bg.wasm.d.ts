/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const default_request: () => [number, number];
export const evaluate: (a: number, b: number) => [number, number];
export const presets: () => [number, number];
export const profile_svg: (a: number, b: number) => [number, number];
export const synthesize: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
