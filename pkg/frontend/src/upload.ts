// Two clearly separated upload forms: the top one starts a standard
// analysis session, the bottom one a citing-year-segmented (multi)
// session. Errors (e.g. the upload size limit) are shown inline.

import { ApiClient, ApiError, Mode, SessionSummary } from "./api.js";

export type SessionHandler = (session: SessionSummary) => void;

export class UploadView {
  constructor(
    private container: HTMLElement,
    private api: ApiClient,
    private onSession: SessionHandler,
  ) {
    this.container.append(
      this.buildForm("standard", "Standard analysis", "Upload a Web of Science plain-text export for a standard spectrogram."),
      this.buildForm("multi", "Multi analysis", "Upload a Web of Science plain-text export segmented by citing publication year."),
    );
  }

  private buildForm(mode: Mode, title: string, hint: string): HTMLElement {
    const section = document.createElement("section");
    section.className = `upload-form upload-${mode}`;

    const heading = document.createElement("h2");
    heading.textContent = title;
    const description = document.createElement("p");
    description.textContent = hint;

    const form = document.createElement("form");
    const fileInput = document.createElement("input");
    fileInput.type = "file";
    fileInput.name = "file";
    fileInput.required = true;
    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "Analyze";
    const error = document.createElement("p");
    error.className = "upload-error";
    error.hidden = true;

    form.append(fileInput, submit, error);
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const file = fileInput.files?.[0];
      if (!file) return;
      error.hidden = true;
      submit.disabled = true;
      this.api
        .createSession(file, mode)
        .then((session) => this.onSession(session))
        .catch((err) => {
          error.textContent =
            err instanceof ApiError ? err.message : "Upload failed; please retry.";
          error.hidden = false;
        })
        .finally(() => {
          submit.disabled = false;
        });
    });

    section.append(heading, description, form);
    return section;
  }
}
