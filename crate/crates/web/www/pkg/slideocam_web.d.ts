/* tslint:disable */
/* eslint-disable */

/**
 * The default synthesis request.
 */
export function default_request(): string;

/**
 * Evaluates a design configuration: 200 with the full evaluation, 422
 * with the constraint ledger, 400 on malformed input.
 */
export function evaluate(config_json: string): string;

/**
 * Named example designs as a JSON object keyed by preset name.
 */
export function presets(): string;

/**
 * SVG drawing of the cam profile, pitch curve and rollers, or an empty
 * string when the design cannot be drawn.
 */
export function profile_svg(config_json: string): string;

/**
 * Runs the design loop: 200 with the outcome, 409 with the trace when no
 * design satisfies the limits, 422 on out-of-range values, 400 on
 * malformed input.
 */
export function synthesize(request_json: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly default_request: () => [number, number];
    readonly evaluate: (a: number, b: number) => [number, number];
    readonly presets: () => [number, number];
    readonly profile_svg: (a: number, b: number) => [number, number];
    readonly synthesize: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
